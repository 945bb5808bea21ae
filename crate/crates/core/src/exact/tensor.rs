use crate::error::Error;
use crate::exact::map::ModuleMap;
use crate::exact::matrix::Mat;
use crate::exact::module::{canonicalize, FgModule};
use num::{BigInt, BigRational, Integer, One};

/// The tensor product M ⊗ N over the common base ring, with the universal
/// bilinear map and functorial action on maps. Components are indexed by
/// pairs of canonical generators.
#[derive(Clone, Debug)]
pub struct TensorModule {
    left: FgModule,
    right: FgModule,
    /// (left generator, right generator, order of the cyclic summand).
    components: Vec<(usize, usize, BigInt)>,
    module: FgModule,
    to_canon: Mat,
    from_canon: Mat,
}

impl TensorModule {
    pub fn new(left: &FgModule, right: &FgModule) -> Result<Self, Error> {
        left.ring().same(right.ring())?;
        let ring = left.ring();
        let la = left.ann_lifts();
        let ra = right.ann_lifts();
        let mut components = Vec::new();
        for i in 0..left.ngens() {
            for j in 0..right.ngens() {
                let g = la[i].gcd(&ra[j]);
                if g.is_one() {
                    continue;
                }
                components.push((i, j, g));
            }
        }
        let mut pres = Mat::zero(components.len(), components.len());
        for (k, (_, _, o)) in components.iter().enumerate() {
            pres.set(k, k, BigRational::from(o.clone()));
        }
        let canon = canonicalize(ring, components.len(), &pres);
        Ok(TensorModule {
            left: left.clone(),
            right: right.clone(),
            components,
            module: canon.module,
            to_canon: canon.to_canon,
            from_canon: canon.from_canon,
        })
    }

    pub fn module(&self) -> &FgModule {
        &self.module
    }

    pub fn left(&self) -> &FgModule {
        &self.left
    }

    pub fn right(&self) -> &FgModule {
        &self.right
    }

    /// The universal bilinear map on coordinate columns: x ⊗ y.
    pub fn pure_tensor(&self, x: &Mat, y: &Mat) -> Mat {
        assert_eq!(x.rows(), self.left.ngens());
        assert_eq!(y.rows(), self.right.ngens());
        let mut comp = Mat::zero(self.components.len(), 1);
        for (k, (i, j, _)) in self.components.iter().enumerate() {
            comp.set(k, 0, x.at(*i, 0) * y.at(*j, 0));
        }
        self.module.normalize_column(&self.to_canon.mul(&comp))
    }

    /// Functorial action: the map M ⊗ N -> M' ⊗ N' induced by f and g.
    pub fn induced(&self, other: &TensorModule, f: &ModuleMap, g: &ModuleMap) -> ModuleMap {
        assert_eq!(f.domain(), &self.left);
        assert_eq!(g.domain(), &self.right);
        assert_eq!(f.codomain(), &other.left);
        assert_eq!(g.codomain(), &other.right);
        let mut comp = Mat::zero(other.components.len(), self.components.len());
        for (k, (i, j, _)) in self.components.iter().enumerate() {
            for (k2, (i2, j2, _)) in other.components.iter().enumerate() {
                comp.set(k2, k, f.matrix().at(*i2, *i) * g.matrix().at(*j2, *j));
            }
        }
        let mat = other.to_canon.mul(&comp).mul(&self.from_canon);
        ModuleMap::new(self.module.clone(), other.module.clone(), mat)
            .expect("tensor of well-defined maps is well defined")
    }
}

/// Convenience: the canonical module M ⊗ N.
pub fn tensor(left: &FgModule, right: &FgModule) -> Result<FgModule, Error> {
    Ok(TensorModule::new(left, right)?.module().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ring::BaseRing;

    #[test]
    fn unit_law() {
        let r = FgModule::free(BaseRing::Int, 1);
        let m = FgModule::from_invariant_factors(
            BaseRing::Int,
            vec![BigInt::from(2), BigInt::from(0)],
        )
        .unwrap();
        assert_eq!(tensor(&r, &m).unwrap(), m);
        assert_eq!(tensor(&m, &r).unwrap(), m);
    }

    #[test]
    fn torsion_gcd() {
        let z4 = FgModule::cyclic(BaseRing::Int, 4);
        let z6 = FgModule::cyclic(BaseRing::Int, 6);
        let t = tensor(&z4, &z6).unwrap();
        assert_eq!(t.factors(), &[BigInt::from(2)]);
    }

    #[test]
    fn annihilation() {
        let zero = FgModule::zero(BaseRing::Int);
        let m = FgModule::cyclic(BaseRing::Int, 4);
        assert!(tensor(&zero, &m).unwrap().is_zero_module());
    }

    #[test]
    fn functoriality_on_identities_and_composites() {
        let ring = BaseRing::modular(4).unwrap();
        let z4 = FgModule::free(ring.clone(), 1);
        let z2 = FgModule::cyclic(ring.clone(), 2);
        let t = TensorModule::new(&z4, &z2).unwrap();
        let id = t.induced(&t, &z4.identity_map(), &z2.identity_map());
        assert!(id.is_identity());

        let two = ModuleMap::new(z4.clone(), z4.clone(), Mat::from_int_rows(&[vec![2]])).unwrap();
        let a = t.induced(&t, &two, &z2.identity_map());
        let b = t.induced(&t, &two, &z2.identity_map());
        // (2 ⊗ id) ∘ (2 ⊗ id) = 4 ⊗ id = 0 on Z/4 ⊗ Z/2.
        assert!(a.then(&b).is_zero_map());
    }

    #[test]
    fn square_functor_is_not_additive() {
        // (f+g)⊗(f+g) != f⊗f + g⊗g on Z/4 ⊗ Z/4 for f = g = id.
        let ring = BaseRing::modular(4).unwrap();
        let z4 = FgModule::free(ring, 1);
        let t = TensorModule::new(&z4, &z4).unwrap();
        let id = z4.identity_map();
        let double = id.add(&id);
        let sq_of_sum = t.induced(&t, &double, &double);
        let sum_of_sq = t.induced(&t, &id, &id).add(&t.induced(&t, &id, &id));
        assert_ne!(sq_of_sum, sum_of_sq);
    }
}
