use crate::error::Error;
use crate::exact::map::ModuleMap;
use crate::exact::matrix::Mat;
use crate::exact::ring::BaseRing;
use num::{BigInt, BigRational, One, Zero};
use std::fmt;

/// Finitely generated module over a [`BaseRing`], canonicalized by invariant
/// factors. A factor of 0 encodes a free rank-1 summand; nonzero factors form
/// an ascending divisibility chain with zeros last. Two modules are
/// isomorphic exactly when their rings and factor lists agree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FgModule {
    ring: BaseRing,
    factors: Vec<BigInt>,
}

impl FgModule {
    /// Validating constructor from an explicit invariant-factor list.
    pub fn from_invariant_factors(ring: BaseRing, factors: Vec<BigInt>) -> Result<Self, Error> {
        let zero = BigInt::zero();
        let one = BigInt::one();
        let mut seen_zero = false;
        for (i, f) in factors.iter().enumerate() {
            if f < &zero || f == &one {
                return Err(Error::BadStructure(format!(
                    "invariant factor {f} at position {i} is not admissible"
                )));
            }
            if f.is_zero() {
                seen_zero = true;
                continue;
            }
            if seen_zero {
                return Err(Error::BadStructure("zero factors must come last".into()));
            }
            if ring.is_field() {
                return Err(Error::BadStructure(
                    "over a field every invariant factor is zero".into(),
                ));
            }
            if let Some(m) = ring.lift_modulus() {
                if !(BigInt::from(m) % f).is_zero() {
                    return Err(Error::BadStructure(format!(
                        "factor {f} does not divide the modulus {m}"
                    )));
                }
            }
            if i > 0 && !factors[i - 1].is_zero() && !(f % &factors[i - 1]).is_zero() {
                return Err(Error::BadStructure(format!(
                    "divisibility chain violated: {} does not divide {f}",
                    factors[i - 1]
                )));
            }
        }
        Ok(FgModule { ring, factors })
    }

    pub fn zero(ring: BaseRing) -> Self {
        FgModule { ring, factors: vec![] }
    }

    pub fn free(ring: BaseRing, rank: usize) -> Self {
        FgModule {
            ring,
            factors: vec![BigInt::zero(); rank],
        }
    }

    /// The cyclic module R/(n) over the ring R.
    pub fn cyclic(ring: BaseRing, n: u64) -> Self {
        let pres = Mat::from_int_rows(&[vec![n as i64]]);
        canonicalize(&ring, 1, &pres).module
    }

    pub fn ring(&self) -> &BaseRing {
        &self.ring
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn ngens(&self) -> usize {
        self.factors.len()
    }

    pub fn is_zero_module(&self) -> bool {
        self.factors.is_empty()
    }

    /// Integer annihilator of each canonical generator.
    pub fn ann_lifts(&self) -> Vec<BigInt> {
        self.factors.iter().map(|f| self.ring.ann_of_factor(f)).collect()
    }

    /// Relation lattice as matrix columns in canonical coordinates, ring
    /// relations included.
    pub fn rel_lattice(&self) -> Mat {
        let anns = self.ann_lifts();
        let idx: Vec<usize> = (0..self.ngens()).filter(|&i| !anns[i].is_zero()).collect();
        let mut m = Mat::zero(self.ngens(), idx.len());
        for (c, &i) in idx.iter().enumerate() {
            m.set(i, c, BigRational::from(anns[i].clone()));
        }
        m
    }

    /// Number of elements, when finite.
    pub fn element_count(&self) -> Option<BigInt> {
        let mut n = BigInt::one();
        for a in self.ann_lifts() {
            if a.is_zero() {
                return None;
            }
            n *= a;
        }
        Some(n)
    }

    /// All elements as canonical coordinate columns, in lexicographic order.
    /// `None` when the module is infinite.
    pub fn elements(&self) -> Option<Vec<Mat>> {
        let anns = self.ann_lifts();
        if anns.iter().any(|a| a.is_zero()) {
            return None;
        }
        let mut out = vec![Mat::zero(self.ngens(), 1)];
        for (i, a) in anns.iter().enumerate() {
            let bound = a.clone();
            let mut next = Vec::new();
            for base in &out {
                let mut v = BigInt::zero();
                while v < bound {
                    let mut col = base.clone();
                    col.set(i, 0, BigRational::from(v.clone()));
                    next.push(col);
                    v += 1;
                }
            }
            out = next;
        }
        Some(out)
    }

    /// Position of an element (by normalized coordinates) in the
    /// [`FgModule::elements`] order; `None` for infinite modules.
    pub fn element_index(&self, col: &Mat) -> Option<usize> {
        let anns = self.ann_lifts();
        let col = self.normalize_column(col);
        let mut idx = BigInt::zero();
        for i in 0..self.ngens() {
            if anns[i].is_zero() {
                return None;
            }
            idx = idx * &anns[i] + col.at(i, 0).to_integer();
        }
        idx.try_into().ok()
    }

    /// Reduce a coordinate column to canonical representatives.
    pub fn normalize_column(&self, col: &Mat) -> Mat {
        let anns = self.ann_lifts();
        Mat::from_fn(self.ngens(), col.cols(), |i, j| {
            reduce_entry(col.at(i, j), &anns[i])
        })
    }

    pub fn identity_map(&self) -> ModuleMap {
        ModuleMap::new(self.clone(), self.clone(), Mat::identity(self.ngens()))
            .expect("identity is well defined")
    }

    pub fn zero_map_to(&self, codomain: &FgModule) -> ModuleMap {
        ModuleMap::new(
            self.clone(),
            codomain.clone(),
            Mat::zero(codomain.ngens(), self.ngens()),
        )
        .expect("zero map is well defined")
    }
}

impl fmt::Display for FgModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|d| {
                if d.is_zero() {
                    self.ring.to_string()
                } else {
                    format!("Z/{d}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FgModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self, self.ring)
    }
}

pub(crate) fn reduce_entry(x: &BigRational, ann: &BigInt) -> BigRational {
    if ann.is_zero() {
        return x.clone();
    }
    debug_assert!(x.is_integer(), "torsion coordinates must be integers");
    let m = x.to_integer();
    let r = num::Integer::mod_floor(&m, ann);
    BigRational::from(r)
}

/// Result of presenting a module by generators and relations: the canonical
/// module plus the two change-of-coordinates matrices. `to_canon` maps old
/// generator coordinates to canonical ones, `from_canon` is a section of it.
#[derive(Clone, Debug)]
pub struct Canonicalized {
    pub module: FgModule,
    pub to_canon: Mat,
    pub from_canon: Mat,
}

/// Canonicalize the cokernel of `rels` (columns are relation vectors on
/// `ngens` generators). Ring relations are adjoined automatically.
pub fn canonicalize(ring: &BaseRing, ngens: usize, rels: &Mat) -> Canonicalized {
    assert_eq!(rels.rows(), ngens, "relation rows must match generators");
    let mut rel_blocks: Vec<Mat> = Vec::new();
    let integral = if *ring == BaseRing::Rat {
        // Over a field only the span matters; clear denominators per column.
        let (scaled_t, _) = rels.transpose().scaled_integral_rows();
        scaled_t.transpose()
    } else {
        assert!(rels.is_integral(), "relations must be integral over {ring}");
        rels.clone()
    };
    rel_blocks.push(integral);
    if let Some(m) = ring.lift_modulus() {
        rel_blocks.push(Mat::identity(ngens).scale(&BigRational::from(BigInt::from(m))));
    }
    let all = Mat::hstack(&rel_blocks.iter().collect::<Vec<_>>());
    let snf = all.snf().expect("integral relation matrix");
    let diag = snf.diag();

    let mut kept = Vec::new();
    let mut factors = Vec::new();
    for i in 0..ngens {
        let d = if i < diag.len() { diag[i].clone() } else { BigInt::zero() };
        match ring {
            BaseRing::Int => {
                if d != BigInt::one() {
                    kept.push(i);
                    factors.push(d);
                }
            }
            BaseRing::Mod(m) | BaseRing::PrimeField(m) => {
                debug_assert!(!d.is_zero(), "modular lattice has full rank");
                if d != BigInt::one() {
                    kept.push(i);
                    factors.push(if d == BigInt::from(*m) { BigInt::zero() } else { d });
                }
            }
            BaseRing::Rat => {
                if d.is_zero() {
                    kept.push(i);
                    factors.push(BigInt::zero());
                }
            }
        }
    }

    let module = FgModule {
        ring: ring.clone(),
        factors,
    };
    Canonicalized {
        module,
        to_canon: snf.u.select_rows(&kept),
        from_canon: snf.u_inv.select_cols(&kept),
    }
}

impl FgModule {
    /// Present a module as the cokernel of an integer matrix; returns the
    /// canonical module together with the coordinate change.
    pub fn from_presentation(ring: &BaseRing, presentation: &Mat) -> Canonicalized {
        canonicalize(ring, presentation.rows(), presentation)
    }
}

/// A submodule presented by its canonical module and the inclusion.
#[derive(Clone, Debug)]
pub struct Submodule {
    pub module: FgModule,
    pub incl: ModuleMap,
}

/// A quotient presented by its canonical module, the projection, and a
/// coordinate section of the projection (a genuine matrix, not a map).
#[derive(Clone, Debug)]
pub struct Quotient {
    pub module: FgModule,
    pub proj: ModuleMap,
    pub section: Mat,
}

/// Submodule of `ambient` generated by the columns of `gens` (canonical
/// coordinates of the ambient module).
pub fn submodule(ambient: &FgModule, gens: &Mat) -> Submodule {
    assert_eq!(gens.rows(), ambient.ngens());
    let rel = ambient.rel_lattice();
    let joint = Mat::hstack(&[gens, &rel]);
    let null = joint.nullspace();
    let z_rel = null.select_rows(&(0..gens.cols()).collect::<Vec<_>>());
    let canon = canonicalize(ambient.ring(), gens.cols(), &z_rel);
    let incl_mat = gens.mul(&canon.from_canon);
    let incl = ModuleMap::new(canon.module.clone(), ambient.clone(), incl_mat)
        .expect("submodule inclusion is well defined");
    Submodule {
        module: canon.module,
        incl,
    }
}

/// Quotient of `ambient` by the submodule generated by the columns of `gens`.
pub fn quotient(ambient: &FgModule, gens: &Mat) -> Quotient {
    assert_eq!(gens.rows(), ambient.ngens());
    let rel = ambient.rel_lattice();
    let joint = Mat::hstack(&[gens, &rel]);
    let canon = canonicalize(ambient.ring(), ambient.ngens(), &joint);
    let proj = ModuleMap::new(ambient.clone(), canon.module.clone(), canon.to_canon)
        .expect("quotient projection is well defined");
    Quotient {
        module: canon.module,
        proj,
        section: canon.from_canon,
    }
}

/// Direct sum with tracked injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: FgModule,
    pub injections: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
}

pub fn direct_sum(ring: &BaseRing, parts: &[FgModule]) -> DirectSum {
    for p in parts {
        assert_eq!(p.ring(), ring, "direct sum over mixed rings");
    }
    let total: usize = parts.iter().map(|p| p.ngens()).sum();
    let rels: Vec<Mat> = parts.iter().map(|p| p.rel_lattice()).collect();
    let rel = Mat::block_diag(&rels.iter().collect::<Vec<_>>());
    let canon = canonicalize(ring, total, &rel);

    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut off = 0;
    for p in parts {
        let n = p.ngens();
        let mut embed = Mat::zero(total, n);
        for i in 0..n {
            embed.set(off + i, i, BigRational::one());
        }
        let inj_mat = canon.to_canon.mul(&embed);
        injections.push(
            ModuleMap::new(p.clone(), canon.module.clone(), inj_mat)
                .expect("sum injection is well defined"),
        );
        let proj_mat = canon
            .from_canon
            .select_rows(&(off..off + n).collect::<Vec<_>>());
        projections.push(
            ModuleMap::new(canon.module.clone(), p.clone(), proj_mat)
                .expect("sum projection is well defined"),
        );
        off += n;
    }
    DirectSum {
        module: canon.module,
        injections,
        projections,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmod(m: u64) -> BaseRing {
        BaseRing::modular(m).unwrap()
    }

    #[test]
    fn cyclic_canonical_forms() {
        let z2_over_z4 = FgModule::cyclic(zmod(4), 2);
        assert_eq!(z2_over_z4.factors(), &[BigInt::from(2)]);
        // Z/4 over Z/4 is free of rank one, encoded by a zero factor.
        let z4_over_z4 = FgModule::cyclic(zmod(4), 4);
        assert_eq!(z4_over_z4.factors(), &[BigInt::from(0)]);
        let z2_over_z = FgModule::cyclic(BaseRing::Int, 2);
        assert_eq!(z2_over_z.factors(), &[BigInt::from(2)]);
        // Over F2 the relation 2 vanishes, so the presentation gives a free
        // module; a unit relation kills the generator instead.
        let f2 = BaseRing::prime_field(2).unwrap();
        assert_eq!(FgModule::cyclic(f2.clone(), 2).factors(), &[BigInt::from(0)]);
        assert!(FgModule::cyclic(f2, 3).is_zero_module());
    }

    #[test]
    fn presentation_invariant_under_row_col_operations() {
        // coker [[2,4],[6,8]] over Z has invariant factors 2, 4.
        let a = Mat::from_int_rows(&[vec![2, 4], vec![6, 8]]);
        let m = FgModule::from_presentation(&BaseRing::Int, &a).module;
        assert_eq!(m.factors(), &[BigInt::from(2), BigInt::from(4)]);
        // A randomized change of presentation must give the same form.
        let b = Mat::from_int_rows(&[vec![2 + 4 * 3, 4], vec![6 + 8 * 3, 8]]);
        let m2 = FgModule::from_presentation(&BaseRing::Int, &b).module;
        assert_eq!(m, m2);
    }

    #[test]
    fn field_modules_are_free() {
        let q = BaseRing::Rat;
        let a = Mat::from_int_rows(&[vec![2, 0], vec![0, 0]]);
        let m = FgModule::from_presentation(&q, &a).module;
        assert_eq!(m.factors(), &[BigInt::zero()]);
    }

    #[test]
    fn mixed_torsion_merges() {
        // Z/2 + Z/3 over Z canonicalizes to Z/6.
        let a = Mat::from_int_rows(&[vec![2, 0], vec![0, 3]]);
        let m = FgModule::from_presentation(&BaseRing::Int, &a).module;
        assert_eq!(m.factors(), &[BigInt::from(6)]);
    }

    #[test]
    fn direct_sum_round_trips() {
        let ring = zmod(4);
        let a = FgModule::cyclic(ring.clone(), 2);
        let b = FgModule::cyclic(ring.clone(), 4);
        let s = direct_sum(&ring, &[a.clone(), b.clone()]);
        assert_eq!(s.module.factors(), &[BigInt::from(2), BigInt::from(0)]);
        for i in 0..2 {
            let comp = s.injections[i].then(&s.projections[i]);
            assert!(comp.is_identity());
        }
        // inj_0 then proj_1 is zero.
        assert!(s.injections[0].then(&s.projections[1]).matrix().is_zero());
    }

    #[test]
    fn element_enumeration_is_exhaustive() {
        let m = FgModule::from_invariant_factors(
            zmod(4),
            vec![BigInt::from(2), BigInt::from(0)],
        )
        .unwrap();
        let els = m.elements().unwrap();
        assert_eq!(els.len(), 8);
        assert_eq!(m.element_count().unwrap(), BigInt::from(8));
    }

    #[test]
    fn display_forms() {
        let ring = BaseRing::Int;
        let m = FgModule::from_invariant_factors(
            ring,
            vec![BigInt::from(2), BigInt::from(4), BigInt::from(0)],
        )
        .unwrap();
        assert_eq!(m.to_string(), "Z/2 + Z/4 + Z");
        assert_eq!(FgModule::zero(BaseRing::Rat).to_string(), "0");
        let f = FgModule::free(zmod(4), 1);
        assert_eq!(f.to_string(), "Z/4");
    }
}
