use crate::error::Error;
use crate::exact::hom::{induced_postcompose, HomModule};
use crate::exact::map::ModuleMap;
use crate::exact::module::FgModule;
use crate::exact::tensor::TensorModule;
use std::fmt;

/// An operational functor on modules: action on objects and on maps.
/// `Square` (M ↦ M ⊗ M) is the non-additive built-in; compositions are
/// additive exactly when all parts are.
#[derive(Clone, Debug)]
pub enum FunctorSpec {
    Id,
    /// Hom(M0, -).
    Hom(FgModule),
    /// - ⊗ M0.
    Tensor(FgModule),
    /// M ↦ M ⊗ M, f ↦ f ⊗ f.
    Square,
    /// Compose(outer, inner) = outer ∘ inner.
    Compose(Box<FunctorSpec>, Box<FunctorSpec>),
}

impl FunctorSpec {
    pub fn is_additive(&self) -> bool {
        match self {
            FunctorSpec::Id | FunctorSpec::Hom(_) | FunctorSpec::Tensor(_) => true,
            FunctorSpec::Square => false,
            FunctorSpec::Compose(f, g) => f.is_additive() && g.is_additive(),
        }
    }

    pub fn apply(&self, m: &FgModule) -> Result<FgModule, Error> {
        Ok(match self {
            FunctorSpec::Id => m.clone(),
            FunctorSpec::Hom(m0) => HomModule::new(m0, m)?.module().clone(),
            FunctorSpec::Tensor(m0) => TensorModule::new(m, m0)?.module().clone(),
            FunctorSpec::Square => TensorModule::new(m, m)?.module().clone(),
            FunctorSpec::Compose(f, g) => f.apply(&g.apply(m)?)?,
        })
    }

    pub fn apply_map(&self, f: &ModuleMap) -> Result<ModuleMap, Error> {
        Ok(match self {
            FunctorSpec::Id => f.clone(),
            FunctorSpec::Hom(m0) => {
                let hom_dom = HomModule::new(m0, f.domain())?;
                let hom_cod = HomModule::new(m0, f.codomain())?;
                induced_postcompose(&hom_dom, &hom_cod, f)
            }
            FunctorSpec::Tensor(m0) => {
                let t_dom = TensorModule::new(f.domain(), m0)?;
                let t_cod = TensorModule::new(f.codomain(), m0)?;
                t_dom.induced(&t_cod, f, &m0.identity_map())
            }
            FunctorSpec::Square => {
                let t_dom = TensorModule::new(f.domain(), f.domain())?;
                let t_cod = TensorModule::new(f.codomain(), f.codomain())?;
                t_dom.induced(&t_cod, f, f)
            }
            FunctorSpec::Compose(outer, inner) => outer.apply_map(&inner.apply_map(f)?)?,
        })
    }
}

impl fmt::Display for FunctorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorSpec::Id => write!(f, "id"),
            FunctorSpec::Hom(m0) => write!(f, "hom({m0},-)"),
            FunctorSpec::Tensor(m0) => write!(f, "tensor({m0})"),
            FunctorSpec::Square => write!(f, "square"),
            FunctorSpec::Compose(a, b) => write!(f, "{a}∘{b}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::matrix::Mat;
    use crate::exact::ring::BaseRing;
    use num::BigInt;

    #[test]
    fn functors_preserve_identity_and_composition() {
        let ring = BaseRing::modular(4).unwrap();
        let z4 = FgModule::free(ring.clone(), 1);
        let z2 = FgModule::cyclic(ring.clone(), 2);
        let red = ModuleMap::new(z4.clone(), z2.clone(), Mat::from_int_rows(&[vec![1]])).unwrap();
        let emb = ModuleMap::new(z2.clone(), z4.clone(), Mat::from_int_rows(&[vec![2]])).unwrap();
        let specs = vec![
            FunctorSpec::Id,
            FunctorSpec::Hom(z2.clone()),
            FunctorSpec::Tensor(z2.clone()),
            FunctorSpec::Square,
            FunctorSpec::Compose(Box::new(FunctorSpec::Hom(z2.clone())), Box::new(FunctorSpec::Square)),
        ];
        for t in &specs {
            let id4 = t.apply_map(&z4.identity_map()).unwrap();
            assert!(id4.is_identity(), "{t} must preserve identities");
            let lhs = t.apply_map(&red.then(&emb)).unwrap();
            let rhs = t.apply_map(&red).unwrap().then(&t.apply_map(&emb).unwrap());
            assert_eq!(lhs, rhs, "{t} must preserve composition");
        }
    }

    #[test]
    fn hom_functor_values() {
        let ring = BaseRing::modular(4).unwrap();
        let z4 = FgModule::free(ring.clone(), 1);
        let z2 = FgModule::cyclic(ring, 2);
        let t = FunctorSpec::Hom(z2.clone());
        assert_eq!(t.apply(&z4).unwrap().factors(), &[BigInt::from(2)]);
        assert_eq!(t.apply(&z2).unwrap().factors(), &[BigInt::from(2)]);
    }

    #[test]
    fn functors_carry_isos_to_isos() {
        let ring = BaseRing::modular(4).unwrap();
        let z4 = FgModule::free(ring.clone(), 1);
        let three = ModuleMap::new(z4.clone(), z4.clone(), Mat::from_int_rows(&[vec![3]])).unwrap();
        for t in [FunctorSpec::Hom(FgModule::cyclic(ring, 2)), FunctorSpec::Square] {
            assert!(t.apply_map(&three).unwrap().is_isomorphism());
        }
    }
}
