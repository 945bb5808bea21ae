use crate::cosimplicial::complex::CochainComplex;
use crate::cosimplicial::delta::{injections, surjections, MonotoneMap};
use crate::error::Error;
use crate::exact::hom::{induced_precompose, HomModule};
use crate::exact::map::{corestrict, ModuleMap};
use crate::exact::matrix::Mat;
use crate::exact::module::{direct_sum, quotient, submodule, FgModule, Submodule};
use crate::exact::ring::BaseRing;

/// Whether the structure maps follow the cosimplicial or the simplicial
/// identity scheme. The two are the same diagram shape with arrows reversed
/// and share one representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Cosimplicial,
    Simplicial,
}

/// A truncated cosimplicial or simplicial module.
///
/// `up[n]` holds the maps level n -> level n+1 (cofaces d^i for the
/// cosimplicial orientation, degeneracies s_j for the simplicial one) and
/// `down[n]` the maps level n+1 -> level n (codegeneracies s^j, respectively
/// faces d_i). All structure identities are checked at construction within
/// the truncation.
#[derive(Clone, Debug)]
pub struct Tower {
    ring: BaseRing,
    orientation: Orientation,
    levels: Vec<FgModule>,
    up: Vec<Vec<ModuleMap>>,
    down: Vec<Vec<ModuleMap>>,
}

impl Tower {
    pub fn new(
        ring: BaseRing,
        orientation: Orientation,
        levels: Vec<FgModule>,
        up: Vec<Vec<ModuleMap>>,
        down: Vec<Vec<ModuleMap>>,
    ) -> Result<Self, Error> {
        if levels.is_empty() {
            return Err(Error::BadStructure("a tower needs at least level 0".into()));
        }
        for l in &levels {
            ring.same(l.ring())?;
        }
        let n_max = levels.len() - 1;
        if up.len() != n_max || down.len() != n_max {
            return Err(Error::Shape {
                expected: format!("{n_max} layers of structure maps"),
                got: format!("{} up, {} down", up.len(), down.len()),
                context: "tower".into(),
            });
        }
        let t = Tower {
            ring,
            orientation,
            levels,
            up,
            down,
        };
        t.check_shapes()?;
        t.check_identities()?;
        Ok(t)
    }

    fn check_shapes(&self) -> Result<(), Error> {
        let n_max = self.n_max();
        for n in 0..n_max {
            let (want_up, want_down) = match self.orientation {
                Orientation::Cosimplicial => (n + 2, n + 1),
                Orientation::Simplicial => (n + 1, n + 2),
            };
            if self.up[n].len() != want_up || self.down[n].len() != want_down {
                return Err(Error::Shape {
                    expected: format!("{want_up} up maps and {want_down} down maps at layer {n}"),
                    got: format!("{} and {}", self.up[n].len(), self.down[n].len()),
                    context: "tower structure maps".into(),
                });
            }
            for u in &self.up[n] {
                if u.domain() != &self.levels[n] || u.codomain() != &self.levels[n + 1] {
                    return Err(Error::Shape {
                        expected: format!("{} -> {}", self.levels[n], self.levels[n + 1]),
                        got: format!("{} -> {}", u.domain(), u.codomain()),
                        context: format!("up map at layer {n}"),
                    });
                }
            }
            for d in &self.down[n] {
                if d.domain() != &self.levels[n + 1] || d.codomain() != &self.levels[n] {
                    return Err(Error::Shape {
                        expected: format!("{} -> {}", self.levels[n + 1], self.levels[n]),
                        got: format!("{} -> {}", d.domain(), d.codomain()),
                        context: format!("down map at layer {n}"),
                    });
                }
            }
        }
        Ok(())
    }

    fn check_identities(&self) -> Result<(), Error> {
        match self.orientation {
            Orientation::Cosimplicial => self.check_cosimplicial_identities(),
            Orientation::Simplicial => self.check_simplicial_identities(),
        }
    }

    fn check_cosimplicial_identities(&self) -> Result<(), Error> {
        let n_max = self.n_max();
        // d^j d^i = d^i d^{j-1} for i < j.
        for n in 0..n_max.saturating_sub(1) {
            for j in 0..=n + 2 {
                for i in 0..j {
                    let lhs = self.up[n][i].then(&self.up[n + 1][j]);
                    let rhs = self.up[n][j - 1].then(&self.up[n + 1][i]);
                    if lhs != rhs {
                        return Err(Error::IdentityViolation(format!(
                            "coface identity d^{j} d^{i} at level {n}"
                        )));
                    }
                }
            }
        }
        // Codegeneracy-coface relations.
        for n in 0..n_max {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let comp = self.up[n][i].then(&self.down[n][j]);
                    if i == j || i == j + 1 {
                        if !comp.is_identity() {
                            return Err(Error::IdentityViolation(format!(
                                "s^{j} d^{i} should be the identity at level {n}"
                            )));
                        }
                    } else if i < j {
                        let rhs = self.down[n - 1][j - 1].then(&self.up[n - 1][i]);
                        if comp != rhs {
                            return Err(Error::IdentityViolation(format!(
                                "s^{j} d^{i} = d^{i} s^{j_minus}, level {n}",
                                j_minus = j - 1
                            )));
                        }
                    } else {
                        let rhs = self.down[n - 1][j].then(&self.up[n - 1][i - 1]);
                        if comp != rhs {
                            return Err(Error::IdentityViolation(format!(
                                "s^{j} d^{i} = d^{im} s^{j}, level {n}",
                                im = i - 1
                            )));
                        }
                    }
                }
            }
        }
        // s^j s^i = s^i s^{j+1} for i <= j.
        for n in 0..n_max.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    let lhs = self.down[n + 1][i].then(&self.down[n][j]);
                    let rhs = self.down[n + 1][j + 1].then(&self.down[n][i]);
                    if lhs != rhs {
                        return Err(Error::IdentityViolation(format!(
                            "codegeneracy identity s^{j} s^{i} at level {n}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_simplicial_identities(&self) -> Result<(), Error> {
        let n_max = self.n_max();
        // d_i d_j = d_{j-1} d_i for i < j.
        for n in 0..n_max.saturating_sub(1) {
            for j in 0..=n + 2 {
                for i in 0..j {
                    let lhs = self.down[n + 1][j].then(&self.down[n][i]);
                    let rhs = self.down[n + 1][i].then(&self.down[n][j - 1]);
                    if lhs != rhs {
                        return Err(Error::IdentityViolation(format!(
                            "face identity d_{i} d_{j} at level {}",
                            n + 2
                        )));
                    }
                }
            }
        }
        // Face-degeneracy relations.
        for n in 0..n_max {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let comp = self.up[n][j].then(&self.down[n][i]);
                    if i == j || i == j + 1 {
                        if !comp.is_identity() {
                            return Err(Error::IdentityViolation(format!(
                                "d_{i} s_{j} should be the identity at level {n}"
                            )));
                        }
                    } else if i < j {
                        let rhs = self.down[n - 1][i].then(&self.up[n - 1][j - 1]);
                        if comp != rhs {
                            return Err(Error::IdentityViolation(format!(
                                "d_{i} s_{j} = s_{jm} d_{i}, level {n}",
                                jm = j - 1
                            )));
                        }
                    } else {
                        let rhs = self.down[n - 1][i - 1].then(&self.up[n - 1][j]);
                        if comp != rhs {
                            return Err(Error::IdentityViolation(format!(
                                "d_{i} s_{j} = s_{j} d_{im}, level {n}",
                                im = i - 1
                            )));
                        }
                    }
                }
            }
        }
        // s_i s_j = s_{j+1} s_i for i <= j.
        for n in 0..n_max.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    let lhs = self.up[n][j].then(&self.up[n + 1][i]);
                    let rhs = self.up[n][i].then(&self.up[n + 1][j + 1]);
                    if lhs != rhs {
                        return Err(Error::IdentityViolation(format!(
                            "degeneracy identity s_{i} s_{j} at level {n}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Constant object on `m`, all structure maps the identity.
    pub fn constant(orientation: Orientation, m: &FgModule, n_max: usize) -> Self {
        let levels = vec![m.clone(); n_max + 1];
        let mut up = Vec::new();
        let mut down = Vec::new();
        for n in 0..n_max {
            let (nu, nd) = match orientation {
                Orientation::Cosimplicial => (n + 2, n + 1),
                Orientation::Simplicial => (n + 1, n + 2),
            };
            up.push(vec![m.identity_map(); nu]);
            down.push(vec![m.identity_map(); nd]);
        }
        Tower::new(m.ring().clone(), orientation, levels, up, down)
            .expect("constant tower satisfies the identities")
    }

    pub fn ring(&self) -> &BaseRing {
        &self.ring
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn n_max(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &FgModule {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[FgModule] {
        &self.levels
    }

    /// Coface d^i: X^n -> X^{n+1} (cosimplicial orientation).
    pub fn coface(&self, n: usize, i: usize) -> &ModuleMap {
        assert_eq!(self.orientation, Orientation::Cosimplicial);
        &self.up[n][i]
    }

    /// Codegeneracy s^j: X^{n+1} -> X^n (cosimplicial orientation).
    pub fn codegeneracy(&self, n: usize, j: usize) -> &ModuleMap {
        assert_eq!(self.orientation, Orientation::Cosimplicial);
        &self.down[n][j]
    }

    /// Face d_i: X_n -> X_{n-1} (simplicial orientation).
    pub fn face(&self, n: usize, i: usize) -> &ModuleMap {
        assert_eq!(self.orientation, Orientation::Simplicial);
        &self.down[n - 1][i]
    }

    /// Degeneracy s_j: X_n -> X_{n+1} (simplicial orientation).
    pub fn degeneracy(&self, n: usize, j: usize) -> &ModuleMap {
        assert_eq!(self.orientation, Orientation::Simplicial);
        &self.up[n][j]
    }

    /// The action X(θ): X^{θ.dom} -> X^{θ.cod} of a monotone map, via the
    /// epi-mono factorization (cosimplicial orientation).
    pub fn structure_map(&self, theta: &MonotoneMap) -> ModuleMap {
        assert_eq!(self.orientation, Orientation::Cosimplicial);
        assert!(theta.dom <= self.n_max() && theta.cod <= self.n_max());
        let (epi, mono) = theta.epi_mono();
        let mut acc = self.levels[theta.dom].identity_map();
        let mut cur = epi.dom;
        for j in epi.codegeneracy_indices() {
            acc = acc.then(self.codegeneracy(cur - 1, j));
            cur -= 1;
        }
        for &i in mono.coface_indices().iter().rev() {
            acc = acc.then(self.coface(cur, i));
            cur += 1;
        }
        debug_assert_eq!(cur, theta.cod);
        acc
    }

    /// Alternating sum of the up maps at level n (the unnormalized cochain
    /// differential for cosimplicial orientation).
    pub fn alternating_sum_up(&self, n: usize) -> ModuleMap {
        let mut acc = self.levels[n].zero_map_to(&self.levels[n + 1]);
        for (i, d) in self.up[n].iter().enumerate() {
            acc = if i % 2 == 0 { acc.add(d) } else { acc.sub(d) };
        }
        acc
    }

    /// Alternating sum of the faces X_n -> X_{n-1} (simplicial orientation).
    pub fn boundary(&self, n: usize) -> ModuleMap {
        assert_eq!(self.orientation, Orientation::Simplicial);
        let mut acc = self.levels[n].zero_map_to(&self.levels[n - 1]);
        for (i, d) in self.down[n - 1].iter().enumerate() {
            acc = if i % 2 == 0 { acc.add(d) } else { acc.sub(d) };
        }
        acc
    }

    /// Normalization of a cosimplicial module: N^n = ∩_j ker(s^j) with the
    /// restricted alternating-sum differential.
    pub fn normalize(&self) -> Normalization {
        assert_eq!(self.orientation, Orientation::Cosimplicial);
        let n_max = self.n_max();
        let mut subs: Vec<Submodule> = Vec::new();
        for n in 0..=n_max {
            if n == 0 {
                let all = Mat::identity(self.levels[0].ngens());
                subs.push(submodule(&self.levels[0], &all));
            } else {
                let mats: Vec<Mat> = (0..n)
                    .map(|j| self.down[n - 1][j].matrix().clone())
                    .collect();
                let joint = Mat::vstack(&mats.iter().collect::<Vec<_>>());
                let rel_blocks: Vec<Mat> =
                    (0..n).map(|_| self.levels[n - 1].rel_lattice()).collect();
                let rel = Mat::block_diag(&rel_blocks.iter().collect::<Vec<_>>());
                let joint_with_rel = Mat::hstack(&[&joint, &rel]);
                let null = joint_with_rel.nullspace();
                let xs = null.select_rows(&(0..self.levels[n].ngens()).collect::<Vec<_>>());
                subs.push(submodule(&self.levels[n], &xs));
            }
        }
        let mut terms: Vec<FgModule> = subs.iter().map(|s| s.module.clone()).collect();
        let mut diffs = Vec::new();
        for n in 0..n_max {
            let total = subs[n].incl.then(&self.alternating_sum_up(n));
            let restricted = corestrict(&total, &subs[n + 1])
                .expect("the alternating sum preserves the normalization");
            diffs.push(restricted);
        }
        if terms.is_empty() {
            terms.push(FgModule::zero(self.ring.clone()));
        }
        let complex = CochainComplex::new(self.ring.clone(), terms, diffs)
            .expect("normalized differential squares to zero");
        Normalization {
            complex,
            inclusions: subs,
        }
    }

    /// The unnormalized cochain complex (full levels, alternating sums).
    pub fn moore_complex(&self) -> CochainComplex {
        assert_eq!(self.orientation, Orientation::Cosimplicial);
        let diffs: Vec<ModuleMap> = (0..self.n_max()).map(|n| self.alternating_sum_up(n)).collect();
        CochainComplex::new(self.ring.clone(), self.levels.clone(), diffs)
            .expect("alternating sums square to zero")
    }

    /// Cosimplicial cohomotopy π^s = H^s(N X). Degrees above `n_max - 1` are
    /// not determined by the truncation and give an error.
    pub fn cohomotopy(&self, s: usize) -> Result<FgModule, Error> {
        if s + 1 > self.n_max() {
            return Err(Error::DegreeOutOfRange {
                requested: s as isize,
                max: self.n_max() as isize - 1,
            });
        }
        Ok(self.normalize().complex.homology_module(s))
    }

    /// Homology of the simplicial Moore complex, π_s = H_s. Needs level
    /// s + 1, so s <= n_max - 1.
    pub fn homotopy(&self, s: usize) -> Result<FgModule, Error> {
        assert_eq!(self.orientation, Orientation::Simplicial);
        if s + 1 > self.n_max() {
            return Err(Error::DegreeOutOfRange {
                requested: s as isize,
                max: self.n_max() as isize - 1,
            });
        }
        let cycles = if s == 0 {
            submodule(&self.levels[0], &Mat::identity(self.levels[0].ngens()))
        } else {
            self.boundary(s).kernel()
        };
        let lift = corestrict(&self.boundary(s + 1), &cycles).expect("boundaries are cycles");
        Ok(quotient(&cycles.module, lift.matrix()).module)
    }

    /// Latching object L^n = colim over injections [k] -> [n], k < n, with
    /// the latching map L^n -> X^n.
    pub fn latching(&self, n: usize) -> (FgModule, ModuleMap) {
        assert_eq!(self.orientation, Orientation::Cosimplicial);
        assert!(n <= self.n_max());
        let mut index: Vec<MonotoneMap> = Vec::new();
        for k in 0..n {
            index.extend(injections(k, n));
        }
        if index.is_empty() {
            let zero = FgModule::zero(self.ring.clone());
            let to = zero.zero_map_to(&self.levels[n]);
            return (zero, to);
        }
        let parts: Vec<FgModule> = index.iter().map(|th| self.levels[th.dom].clone()).collect();
        let sum = direct_sum(&self.ring, &parts);
        // Relations: inj_{θ∘δ^i} - inj_θ ∘ X(δ^i) over basic cofaces into each θ.
        let mut rel_cols: Vec<Mat> = Vec::new();
        for (t, theta) in index.iter().enumerate() {
            if theta.dom == 0 {
                continue;
            }
            for i in 0..=theta.dom {
                let delta = MonotoneMap::coface(theta.dom, i);
                let smaller = delta.then(theta);
                let t2 = index.iter().position(|x| *x == smaller).expect("closed index");
                let via_map = self.structure_map(&delta).then(&sum.injections[t]);
                let direct = sum.injections[t2].clone();
                let diff = direct.sub(&via_map);
                rel_cols.push(diff.matrix().clone());
            }
        }
        let rel = if rel_cols.is_empty() {
            Mat::zero(sum.module.ngens(), 0)
        } else {
            Mat::hstack(&rel_cols.iter().collect::<Vec<_>>())
        };
        let q = quotient(&sum.module, &rel);
        // The latching map descends from Σ_θ X(θ) ∘ proj_θ.
        let mut big = sum.module.zero_map_to(&self.levels[n]);
        for (t, theta) in index.iter().enumerate() {
            big = big.add(&sum.projections[t].then(&self.structure_map(theta)));
        }
        let mat = big.matrix().mul(&q.section);
        let latch = ModuleMap::new(q.module.clone(), self.levels[n].clone(), mat)
            .expect("latching map is well defined");
        debug_assert_eq!(q.proj.then(&latch), big);
        (q.module, latch)
    }

    /// Matching object M^n = lim over surjections [n] -> [k], k < n, with the
    /// matching map X^n -> M^n.
    pub fn matching(&self, n: usize) -> (FgModule, ModuleMap) {
        assert_eq!(self.orientation, Orientation::Cosimplicial);
        assert!(n <= self.n_max());
        let mut index: Vec<MonotoneMap> = Vec::new();
        for k in 0..n {
            index.extend(surjections(n, k));
        }
        if index.is_empty() {
            let zero = FgModule::zero(self.ring.clone());
            let from = self.levels[n].zero_map_to(&zero);
            return (zero, from);
        }
        let parts: Vec<FgModule> = index.iter().map(|ph| self.levels[ph.cod].clone()).collect();
        let sum = direct_sum(&self.ring, &parts);
        // Compatibility: for φ and a basic codegeneracy σ^j on its target,
        // x_{σ^j ∘ φ} = s^j(x_φ).
        let mut conditions: Vec<ModuleMap> = Vec::new();
        for (t, phi) in index.iter().enumerate() {
            if phi.cod == 0 {
                continue;
            }
            for j in 0..phi.cod {
                let sigma = MonotoneMap::codegeneracy(phi.cod - 1, j);
                let smaller = phi.then(&sigma);
                let t2 = index.iter().position(|x| *x == smaller).expect("closed index");
                let lhs = sum.projections[t].then(&self.structure_map(&sigma));
                let rhs = sum.projections[t2].clone();
                conditions.push(lhs.sub(&rhs));
            }
        }
        let kernel_sub = if conditions.is_empty() {
            submodule(&sum.module, &Mat::identity(sum.module.ngens()))
        } else {
            let mats: Vec<Mat> = conditions.iter().map(|c| c.matrix().clone()).collect();
            let stacked = Mat::vstack(&mats.iter().collect::<Vec<_>>());
            let rel_blocks: Vec<Mat> = conditions.iter().map(|c| c.codomain().rel_lattice()).collect();
            let rel = Mat::block_diag(&rel_blocks.iter().collect::<Vec<_>>());
            let joint = Mat::hstack(&[&stacked, &rel]);
            let null = joint.nullspace();
            let xs = null.select_rows(&(0..sum.module.ngens()).collect::<Vec<_>>());
            submodule(&sum.module, &xs)
        };
        // Matching map: x ↦ (X(φ) x)_φ, corestricted to the limit.
        let mut tuple = self.levels[n].zero_map_to(&sum.module);
        for (t, phi) in index.iter().enumerate() {
            tuple = tuple.add(&self.structure_map(phi).then(&sum.injections[t]));
        }
        let m = corestrict(&tuple, &kernel_sub).expect("tuple map lands in the limit");
        (kernel_sub.module.clone(), m)
    }

    /// Hom(X^•, W) of a cosimplicial module is a simplicial module; the
    /// orientation flips and structure maps are precompositions.
    pub fn hom_into(&self, w: &FgModule) -> Result<Tower, Error> {
        assert_eq!(self.orientation, Orientation::Cosimplicial);
        let homs: Vec<HomModule> = self
            .levels
            .iter()
            .map(|l| HomModule::new(l, w))
            .collect::<Result<_, _>>()?;
        let levels: Vec<FgModule> = homs.iter().map(|h| h.module().clone()).collect();
        let mut up = Vec::new();
        let mut down = Vec::new();
        for n in 0..self.n_max() {
            // Faces of Hom(X, W) at level n+1 come from cofaces X^n -> X^{n+1}.
            let faces: Vec<ModuleMap> = (0..=n + 1)
                .map(|i| induced_precompose(&homs[n + 1], &homs[n], self.coface(n, i)))
                .collect();
            // Degeneracies at level n come from codegeneracies X^{n+1} -> X^n.
            let degs: Vec<ModuleMap> = (0..=n)
                .map(|j| induced_precompose(&homs[n], &homs[n + 1], self.codegeneracy(n, j)))
                .collect();
            down.push(faces);
            up.push(degs);
        }
        Tower::new(self.ring.clone(), Orientation::Simplicial, levels, up, down)
    }
}

/// A normalized cosimplicial module: the cochain complex together with the
/// level-wise inclusions N^n ⊆ X^n.
#[derive(Clone, Debug)]
pub struct Normalization {
    pub complex: CochainComplex,
    pub inclusions: Vec<Submodule>,
}

/// An augmented cosimplicial module α: A -> X^0 with d^0 α = d^1 α, or the
/// dual augmented simplicial module ε: X_0 -> A with ε d_0 = ε d_1.
#[derive(Clone, Debug)]
pub struct AugmentedTower {
    pub base: FgModule,
    pub aug: ModuleMap,
    pub tower: Tower,
}

impl AugmentedTower {
    pub fn new(base: FgModule, aug: ModuleMap, tower: Tower) -> Result<Self, Error> {
        base.ring().same(tower.ring())?;
        match tower.orientation() {
            Orientation::Cosimplicial => {
                if aug.domain() != &base || aug.codomain() != tower.level(0) {
                    return Err(Error::Shape {
                        expected: format!("{} -> {}", base, tower.level(0)),
                        got: format!("{} -> {}", aug.domain(), aug.codomain()),
                        context: "augmentation".into(),
                    });
                }
                if tower.n_max() >= 1 {
                    let a = aug.then(tower.coface(0, 0));
                    let b = aug.then(tower.coface(0, 1));
                    if a != b {
                        return Err(Error::IdentityViolation("d^0 α != d^1 α".into()));
                    }
                }
            }
            Orientation::Simplicial => {
                if aug.domain() != tower.level(0) || aug.codomain() != &base {
                    return Err(Error::Shape {
                        expected: format!("{} -> {}", tower.level(0), base),
                        got: format!("{} -> {}", aug.domain(), aug.codomain()),
                        context: "augmentation".into(),
                    });
                }
                if tower.n_max() >= 1 {
                    let a = tower.face(1, 0).then(&aug);
                    let b = tower.face(1, 1).then(&aug);
                    if a != b {
                        return Err(Error::IdentityViolation("ε d_0 != ε d_1".into()));
                    }
                }
            }
        }
        Ok(AugmentedTower { base, aug, tower })
    }

    /// Homology of the augmented Moore complex
    /// ... -> X_1 -> X_0 -> A -> 0 in degree `s` (s = -1 is the cokernel of
    /// the augmentation). Simplicial orientation.
    pub fn augmented_homology(&self, s: isize) -> Result<FgModule, Error> {
        assert_eq!(self.tower.orientation(), Orientation::Simplicial);
        let n_max = self.tower.n_max() as isize;
        if s < -1 || s + 1 > n_max {
            return Err(Error::DegreeOutOfRange {
                requested: s,
                max: n_max - 1,
            });
        }
        if s == -1 {
            return Ok(self.aug.cokernel().module);
        }
        let s = s as usize;
        let cycles = if s == 0 {
            self.aug.kernel()
        } else {
            self.tower.boundary(s).kernel()
        };
        let lift = corestrict(&self.tower.boundary(s + 1), &cycles)
            .expect("boundaries are cycles of the augmented complex");
        Ok(quotient(&cycles.module, lift.matrix()).module)
    }

    /// True when the augmented Moore complex is exact in every degree the
    /// truncation determines.
    pub fn is_augmented_acyclic(&self) -> Result<bool, Error> {
        let n_max = self.tower.n_max() as isize;
        for s in -1..n_max {
            if !self.augmented_homology(s)?.is_zero_module() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Cohomotopy relative to the augmentation (cosimplicial orientation):
    /// homology of 0 -> A -> N^0 -> N^1 -> ... with A in degree -1.
    pub fn augmented_cohomotopy(&self, s: isize) -> Result<FgModule, Error> {
        assert_eq!(self.tower.orientation(), Orientation::Cosimplicial);
        let n_max = self.tower.n_max() as isize;
        if s < -1 || s + 1 > n_max {
            return Err(Error::DegreeOutOfRange {
                requested: s,
                max: n_max - 1,
            });
        }
        if s == -1 {
            return Ok(self.aug.kernel().module);
        }
        let norm = self.tower.normalize();
        let s = s as usize;
        let cycles = norm.complex.diff(s).kernel();
        let prev = if s == 0 {
            // Boundaries in degree 0 come from the augmentation; α lands in
            // N^0 since N^0 is all of X^0.
            corestrict(&self.aug, &norm.inclusions[0])
                .expect("augmentation factors through N^0")
        } else {
            norm.complex.diff(s - 1)
        };
        let lift = corestrict(&prev, &cycles).expect("augmentation lands in the cocycles");
        Ok(quotient(&cycles.module, lift.matrix()).module)
    }
}

/// A cosimplicial map between towers, checked levelwise to commute with all
/// structure maps.
pub fn check_tower_map(src: &Tower, dst: &Tower, comps: &[ModuleMap]) -> Result<(), Error> {
    if src.n_max() != dst.n_max() || comps.len() != src.levels().len() {
        return Err(Error::Shape {
            expected: format!("{} components", src.levels().len()),
            got: format!("{}", comps.len()),
            context: "tower map".into(),
        });
    }
    for n in 0..src.n_max() {
        for (u1, u2) in src.up[n].iter().zip(dst.up[n].iter()) {
            if comps[n].then(u2) != u1.then(&comps[n + 1]) {
                return Err(Error::IdentityViolation(format!(
                    "tower map fails to commute with an up map at level {n}"
                )));
            }
        }
        for (d1, d2) in src.down[n].iter().zip(dst.down[n].iter()) {
            if comps[n + 1].then(d2) != d1.then(&comps[n]) {
                return Err(Error::IdentityViolation(format!(
                    "tower map fails to commute with a down map at level {n}"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    #[test]
    fn constant_tower_cohomotopy() {
        let ring = BaseRing::modular(4).unwrap();
        let a = FgModule::cyclic(ring, 2);
        let x = Tower::constant(Orientation::Cosimplicial, &a, 4);
        assert_eq!(x.cohomotopy(0).unwrap(), a);
        for s in 1..=3 {
            assert!(x.cohomotopy(s).unwrap().is_zero_module());
        }
        assert!(x.cohomotopy(4).is_err());
    }

    #[test]
    fn constant_latching_matching() {
        let ring = BaseRing::Int;
        let a = FgModule::cyclic(ring, 4);
        let x = Tower::constant(Orientation::Cosimplicial, &a, 2);
        let (l0, _) = x.latching(0);
        let (m0, _) = x.matching(0);
        assert!(l0.is_zero_module());
        assert!(m0.is_zero_module());
        // L^1 of any X is X^0 ⊕ X^0 via d^0, d^1 (no relations in range).
        let (l1, to) = x.latching(1);
        assert_eq!(l1.factors(), &[BigInt::from(4), BigInt::from(4)]);
        assert!(to.is_surjective());
        // M^1 is X^0 via s^0.
        let (m1, from) = x.matching(1);
        assert_eq!(m1, a);
        assert!(from.is_surjective());
    }

    #[test]
    fn moore_and_normalized_cohomology_agree() {
        let ring = BaseRing::modular(4).unwrap();
        let a = FgModule::cyclic(ring, 2);
        let x = Tower::constant(Orientation::Cosimplicial, &a, 3);
        let moore = x.moore_complex();
        for s in 0..=2 {
            assert_eq!(
                x.cohomotopy(s).unwrap().factors(),
                moore.homology_module(s).factors()
            );
        }
    }

    #[test]
    fn hom_into_flips_orientation() {
        let ring = BaseRing::modular(4).unwrap();
        let a = FgModule::cyclic(ring.clone(), 2);
        let w = FgModule::free(ring, 1);
        let x = Tower::constant(Orientation::Cosimplicial, &a, 2);
        let h = x.hom_into(&w).unwrap();
        assert_eq!(h.orientation(), Orientation::Simplicial);
        // Hom(Z/2, Z/4) = Z/2 at every level.
        for n in 0..=2 {
            assert_eq!(h.level(n).factors(), &[BigInt::from(2)]);
        }
        // Constant tower: π_0 = Hom(A, W), π_s = 0 above.
        assert_eq!(h.homotopy(0).unwrap().factors(), &[BigInt::from(2)]);
        assert!(h.homotopy(1).unwrap().is_zero_module());
    }
}
