use crate::cosimplicial::contraction::{ContractionMap, LeftContraction};
use crate::cosimplicial::tower::{AugmentedTower, Orientation, Tower};
use crate::error::Error;
use crate::exact::hom::{induced_precompose, HomModule};
use crate::exact::map::ModuleMap;
use crate::exact::module::{direct_sum, DirectSum, FgModule};
use crate::resolution::class::{ClassMode, InjectiveClass};
use std::collections::HashMap;

/// An operational triple ⟨Γ, η, μ⟩ on modules. The codensity triple sends M
/// to the product of one copy of W per element of Hom(M, W) over the
/// cogenerators W; it needs a finite base ring and is guarded by a
/// coordinate bound because the tower grows doubly exponentially.
#[derive(Clone, Debug)]
pub enum Triple {
    Identity,
    Codensity {
        class: InjectiveClass,
        max_coords: u64,
    },
}

pub const DEFAULT_MAX_COORDS: u64 = 1 << 16;

impl Triple {
    pub fn identity() -> Self {
        Triple::Identity
    }

    pub fn codensity(class: InjectiveClass, max_coords: u64) -> Result<Self, Error> {
        if !class.ring().is_finite() {
            return Err(Error::BadStructure(
                "the codensity triple needs a finite base ring".into(),
            ));
        }
        if !matches!(class.mode(), ClassMode::Cogenerators(_)) {
            return Err(Error::BadStructure(
                "the codensity triple needs an explicit cogenerator set".into(),
            ));
        }
        Ok(Triple::Codensity { class, max_coords })
    }

    pub fn apply(&self, m: &FgModule) -> Result<FgModule, Error> {
        let mut ctx = TripleCtx::new(self);
        ctx.apply(m)
    }

    pub fn apply_map(&self, f: &ModuleMap) -> Result<ModuleMap, Error> {
        let mut ctx = TripleCtx::new(self);
        ctx.apply_map(f)
    }

    pub fn unit(&self, m: &FgModule) -> Result<ModuleMap, Error> {
        let mut ctx = TripleCtx::new(self);
        ctx.unit(m)
    }

    pub fn mult(&self, m: &FgModule) -> Result<ModuleMap, Error> {
        let mut ctx = TripleCtx::new(self);
        ctx.mult(m)
    }

    /// Γ-injectivity: the unit η_I splits; the witness is a retraction.
    pub fn injective_witness(&self, i: &FgModule) -> Result<(bool, Option<ModuleMap>), Error> {
        let eta = self.unit(i)?;
        let rep = eta.splitting_test();
        Ok((rep.split_mono, rep.retraction))
    }
}

/// Per-module layer of codensity data: the Hom enumerations into each
/// cogenerator and the assembled product ΓM.
struct Layer {
    /// Per cogenerator: the Hom module and its enumerated elements.
    homs: Vec<(HomModule, Vec<ModuleMap>)>,
    /// Offset of each cogenerator's block in the part list.
    offsets: Vec<usize>,
    sum: DirectSum,
}

/// Evaluation context with a layer cache, so towers reuse the Hom
/// enumerations of repeated modules.
pub struct TripleCtx<'a> {
    triple: &'a Triple,
    layers: HashMap<FgModule, usize>,
    storage: Vec<Layer>,
}

impl<'a> TripleCtx<'a> {
    pub fn new(triple: &'a Triple) -> Self {
        TripleCtx {
            triple,
            layers: HashMap::new(),
            storage: Vec::new(),
        }
    }

    fn layer(&mut self, m: &FgModule) -> Result<usize, Error> {
        if let Some(&i) = self.layers.get(m) {
            return Ok(i);
        }
        let Triple::Codensity { class, max_coords } = self.triple else {
            unreachable!("layers are only built for the codensity triple")
        };
        let ClassMode::Cogenerators(ws) = class.mode() else {
            unreachable!("checked at construction")
        };
        // Guard the coordinate count before enumerating.
        let mut coords: u128 = 0;
        for w in ws {
            let hom = HomModule::new(m, w)?;
            let count = hom.module().element_count().ok_or_else(|| {
                Error::BadStructure("codensity layers need finite Hom sets".into())
            })?;
            let count: u128 = count.try_into().map_err(|_| Error::SizeLimit {
                needed: u128::MAX,
                bound: *max_coords as u128,
            })?;
            coords += count * w.ngens() as u128;
        }
        if coords > *max_coords as u128 {
            return Err(Error::SizeLimit {
                needed: coords,
                bound: *max_coords as u128,
            });
        }
        let mut homs = Vec::new();
        let mut offsets = Vec::new();
        let mut parts: Vec<FgModule> = Vec::new();
        for w in ws {
            let hom = HomModule::new(m, w)?;
            let els = hom.enumerate_maps().expect("finite by the guard");
            offsets.push(parts.len());
            parts.extend(std::iter::repeat(w.clone()).take(els.len()));
            homs.push((hom, els));
        }
        let sum = direct_sum(class.ring(), &parts);
        self.storage.push(Layer { homs, offsets, sum });
        self.layers.insert(m.clone(), self.storage.len() - 1);
        Ok(self.storage.len() - 1)
    }

    pub fn apply(&mut self, m: &FgModule) -> Result<FgModule, Error> {
        match self.triple {
            Triple::Identity => Ok(m.clone()),
            Triple::Codensity { .. } => {
                let l = self.layer(m)?;
                Ok(self.storage[l].sum.module.clone())
            }
        }
    }

    pub fn unit(&mut self, m: &FgModule) -> Result<ModuleMap, Error> {
        match self.triple {
            Triple::Identity => Ok(m.identity_map()),
            Triple::Codensity { .. } => {
                let l = self.layer(m)?;
                let layer = &self.storage[l];
                let mut eta = m.zero_map_to(&layer.sum.module);
                let mut t = 0;
                for (_, els) in &layer.homs {
                    for f in els {
                        eta = eta.add(&f.then(&layer.sum.injections[t]));
                        t += 1;
                    }
                }
                Ok(eta)
            }
        }
    }

    pub fn apply_map(&mut self, f: &ModuleMap) -> Result<ModuleMap, Error> {
        match self.triple {
            Triple::Identity => Ok(f.clone()),
            Triple::Codensity { .. } => {
                let lx = self.layer(f.domain())?;
                let ly = self.layer(f.codomain())?;
                let (gx, gy) = (&self.storage[lx], &self.storage[ly]);
                let mut out = gx.sum.module.zero_map_to(&gy.sum.module);
                for (wi, (hom_y, els_y)) in gy.homs.iter().enumerate() {
                    let _ = hom_y;
                    for (k, h) in els_y.iter().enumerate() {
                        let t = gy.offsets[wi] + k;
                        let pulled = f.then(h);
                        let s_local = gx.homs[wi].0.index_of(&pulled).expect("finite hom");
                        let s = gx.offsets[wi] + s_local;
                        out = out.add(&gx.sum.projections[s].then(&gy.sum.injections[t]));
                    }
                }
                Ok(out)
            }
        }
    }

    pub fn mult(&mut self, m: &FgModule) -> Result<ModuleMap, Error> {
        match self.triple {
            Triple::Identity => Ok(m.identity_map()),
            Triple::Codensity { .. } => {
                let lm = self.layer(m)?;
                let gamma_m = self.storage[lm].sum.module.clone();
                let lg = self.layer(&gamma_m)?;
                let (layer_m, layer_g) = (&self.storage[lm], &self.storage[lg]);
                // ΓΓM -> ΓM: the (W, f)-coordinate is the coordinate of ΓΓM
                // indexed by the projection π_f: ΓM -> W.
                let mut out = layer_g.sum.module.zero_map_to(&gamma_m);
                for (wi, (_, els_m)) in layer_m.homs.iter().enumerate() {
                    for (k, _) in els_m.iter().enumerate() {
                        let t = layer_m.offsets[wi] + k;
                        let pi_f = layer_m.sum.projections[t].clone();
                        let s_local = layer_g.homs[wi].0.index_of(&pi_f).expect("finite hom");
                        let s = layer_g.offsets[wi] + s_local;
                        out = out.add(&layer_g.sum.projections[s].then(&layer_m.sum.injections[t]));
                    }
                }
                Ok(out)
            }
        }
    }
}

/// The triple resolution of A truncated at `n_max`: level n is Γ^{n+1}A with
/// cofaces Γ^i η Γ^{n-i+1} and codegeneracies Γ^i μ Γ^{n-i}; the cosimplicial
/// identities are re-checked by the tower constructor.
pub fn triple_resolution(
    triple: &Triple,
    a: &FgModule,
    n_max: usize,
) -> Result<AugmentedTower, Error> {
    let mut ctx = TripleCtx::new(triple);
    // Γ^k A for k = 0..=n_max+1.
    let mut powers = vec![a.clone()];
    for k in 0..=n_max {
        let next = ctx.apply(&powers[k])?;
        powers.push(next);
    }
    let levels: Vec<FgModule> = (1..=n_max + 1).map(|k| powers[k].clone()).collect();
    let mut up = Vec::new();
    let mut down = Vec::new();
    for n in 0..n_max {
        // d^i: Γ^{n+1}A -> Γ^{n+2}A is Γ^i applied to η at Γ^{n+1-i}A.
        let mut cofaces = Vec::new();
        for i in 0..=n + 1 {
            let mut map = ctx.unit(&powers[n + 1 - i])?;
            for _ in 0..i {
                map = ctx.apply_map(&map)?;
            }
            cofaces.push(map);
        }
        // s^j: Γ^{n+2}A -> Γ^{n+1}A is Γ^j applied to μ at Γ^{n-j}A.
        let mut codegens = Vec::new();
        for j in 0..=n {
            let mut map = ctx.mult(&powers[n - j])?;
            for _ in 0..j {
                map = ctx.apply_map(&map)?;
            }
            codegens.push(map);
        }
        up.push(cofaces);
        down.push(codegens);
    }
    let tower = Tower::new(
        a.ring().clone(),
        Orientation::Cosimplicial,
        levels,
        up,
        down,
    )?;
    let alpha = ctx.unit(a)?;
    AugmentedTower::new(a.clone(), alpha, tower)
}

/// The augmented simplicial module Hom(Γ^•A, I) for a Γ-injective I with
/// retraction r of η_I, together with its left contraction s_{-1} f = r ∘ Γf
/// (which is μ ∘ Γf when I = ΓJ and r = μ_J). The contraction is a set-level
/// map, tabulated pointwise.
pub fn triple_hom_contraction(
    triple: &Triple,
    a: &FgModule,
    n_max: usize,
    i: &FgModule,
    retraction: &ModuleMap,
) -> Result<(AugmentedTower, LeftContraction), Error> {
    let res = triple_resolution(triple, a, n_max)?;
    let hom_tower = res.tower.hom_into(i)?;
    let hom_a = HomModule::new(a, i)?;
    let hom_l0 = HomModule::new(res.tower.level(0), i)?;
    let eps = induced_precompose(&hom_l0, &hom_a, &res.aug);
    let k = AugmentedTower::new(hom_a.module().clone(), eps, hom_tower)?;

    let mut ctx = TripleCtx::new(triple);
    let mut maps: Vec<ContractionMap> = Vec::new();
    // Level -1: Hom(A, I) -> Hom(Γ A, I).
    let hom_levels: Vec<HomModule> = (0..=n_max)
        .map(|n| HomModule::new(res.tower.level(n), i))
        .collect::<Result<_, _>>()?;
    {
        let hom_a2 = hom_a.clone();
        let target = hom_levels[0].clone();
        let mut images = Vec::new();
        let els = hom_a2
            .module()
            .elements()
            .ok_or_else(|| Error::BadStructure("contraction needs finite hom sets".into()))?;
        for e in els {
            let f = hom_a2.element_to_map(&e);
            let gf = ctx.apply_map(&f)?;
            let rf = gf.then(retraction);
            images.push(target.map_to_element(&rf));
        }
        maps.push(ContractionMap::Pointwise {
            domain: hom_a2.module().clone(),
            codomain: target.module().clone(),
            images,
        });
    }
    for n in 0..n_max {
        let source = &hom_levels[n];
        let target = &hom_levels[n + 1];
        let els = source
            .module()
            .elements()
            .ok_or_else(|| Error::BadStructure("contraction needs finite hom sets".into()))?;
        let mut images = Vec::new();
        for e in els {
            let f = source.element_to_map(&e);
            let gf = ctx.apply_map(&f)?;
            let rf = gf.then(retraction);
            images.push(target.map_to_element(&rf));
        }
        maps.push(ContractionMap::Pointwise {
            domain: source.module().clone(),
            codomain: target.module().clone(),
            images,
        });
    }
    let contraction = LeftContraction::new(&k, maps)?;
    Ok((k, contraction))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ring::BaseRing;
    use num::BigInt;

    fn zmod(m: u64) -> BaseRing {
        BaseRing::modular(m).unwrap()
    }

    fn z2_class_over_z4() -> (BaseRing, FgModule, InjectiveClass) {
        let ring = zmod(4);
        let z2 = FgModule::cyclic(ring.clone(), 2);
        let class = InjectiveClass::cogenerators(ring.clone(), vec![z2.clone()]).unwrap();
        (ring, z2, class)
    }

    #[test]
    fn identity_triple_gives_constant_object() {
        let (_, z2, _) = z2_class_over_z4();
        let t = Triple::identity();
        let res = triple_resolution(&t, &z2, 2).unwrap();
        for n in 0..=2 {
            assert_eq!(res.tower.level(n), &z2);
        }
        assert!(res.aug.is_identity());
    }

    #[test]
    fn codensity_layer_sizes() {
        let (_, z2, class) = z2_class_over_z4();
        let t = Triple::codensity(class, DEFAULT_MAX_COORDS).unwrap();
        // Γ(Z/2) = (Z/2)^2 indexed by the two elements of Hom(Z/2, Z/2).
        let g1 = t.apply(&z2).unwrap();
        assert_eq!(g1.factors(), &[BigInt::from(2), BigInt::from(2)]);
        // Γ²(Z/2) = (Z/2)^{|Hom((Z/2)^2, Z/2)|} = (Z/2)^4.
        let g2 = t.apply(&g1).unwrap();
        assert_eq!(g2.ngens(), 4);
        // Γ³(Z/2) = (Z/2)^16.
        let g3 = t.apply(&g2).unwrap();
        assert_eq!(g3.ngens(), 16);
    }

    #[test]
    fn codensity_triple_laws() {
        let (_, z2, class) = z2_class_over_z4();
        let t = Triple::codensity(class, DEFAULT_MAX_COORDS).unwrap();
        let g1 = t.apply(&z2).unwrap();
        // Unit laws: μ ∘ ηΓ = id = μ ∘ Γη.
        let mu = t.mult(&z2).unwrap();
        let eta_gamma = t.unit(&g1).unwrap();
        assert!(eta_gamma.then(&mu).is_identity());
        let gamma_eta = t.apply_map(&t.unit(&z2).unwrap()).unwrap();
        assert!(gamma_eta.then(&mu).is_identity());
        // Associativity: μ ∘ μΓ = μ ∘ Γμ on Γ³.
        let mu_gamma = t.mult(&g1).unwrap();
        let gamma_mu = t.apply_map(&mu).unwrap();
        assert_eq!(mu_gamma.then(&mu), gamma_mu.then(&mu));
    }

    #[test]
    fn codensity_naturality_of_unit() {
        let ring = zmod(4);
        let z4 = FgModule::free(ring.clone(), 1);
        let z2 = FgModule::cyclic(ring.clone(), 2);
        let class = InjectiveClass::cogenerators(ring, vec![z2.clone()]).unwrap();
        let t = Triple::codensity(class, DEFAULT_MAX_COORDS).unwrap();
        let red = ModuleMap::new(z4.clone(), z2.clone(), crate::exact::matrix::Mat::from_int_rows(&[vec![1]]))
            .unwrap();
        let lhs = red.then(&t.unit(&z2).unwrap());
        let rhs = t.unit(&z4).unwrap().then(&t.apply_map(&red).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn triple_resolution_passes_identity_checks() {
        let (_, z2, class) = z2_class_over_z4();
        let t = Triple::codensity(class, DEFAULT_MAX_COORDS).unwrap();
        let res = triple_resolution(&t, &z2, 2).unwrap();
        assert_eq!(res.tower.level(0).ngens(), 2);
        assert_eq!(res.tower.level(1).ngens(), 4);
        assert_eq!(res.tower.level(2).ngens(), 16);
    }

    #[test]
    fn size_guard_trips() {
        let (_, z2, class) = z2_class_over_z4();
        let t = Triple::codensity(class, 8).unwrap();
        let g1 = t.apply(&z2).unwrap();
        let g2 = t.apply(&g1).unwrap();
        assert!(matches!(t.apply(&g2), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn hom_contraction_for_gamma_image() {
        let (_, z2, class) = z2_class_over_z4();
        let t = Triple::codensity(class, DEFAULT_MAX_COORDS).unwrap();
        // I = ΓJ for J = Z/2, with retraction μ_J.
        let i = t.apply(&z2).unwrap();
        let r = t.mult(&z2).unwrap();
        let (k, c) = triple_hom_contraction(&t, &z2, 2, &i, &r).unwrap();
        assert!(crate::cosimplicial::contraction::contraction_acyclic(&k, &c).unwrap());
    }
}
