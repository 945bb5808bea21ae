use crate::cosimplicial::complex::CochainComplex;
use crate::cosimplicial::tower::{AugmentedTower, Orientation, Tower};
use crate::derived::functor::FunctorSpec;
use crate::error::Error;
use crate::exact::module::FgModule;
use crate::resolution::class::InjectiveClass;
use crate::resolution::step::{step_resolution, validate_weak_resolution, Provenance, Resolution};

/// Values of a right derived functor with the resolution provenance and the
/// degree window the truncation actually determines.
#[derive(Clone, Debug)]
pub struct DerivedResult {
    pub values: Vec<FgModule>,
    pub provenance: Provenance,
    pub trusted_up_to: usize,
}

/// Apply a functor levelwise to a tower; the tower constructor re-checks all
/// structure identities, which is exactly functoriality of the action.
pub fn map_tower(t: &FunctorSpec, x: &Tower) -> Result<Tower, Error> {
    let levels: Vec<FgModule> = x
        .levels()
        .iter()
        .map(|l| t.apply(l))
        .collect::<Result<_, _>>()?;
    let mut up = Vec::new();
    let mut down = Vec::new();
    for n in 0..x.n_max() {
        let (nu, nd) = match x.orientation() {
            Orientation::Cosimplicial => (n + 2, n + 1),
            Orientation::Simplicial => (n + 1, n + 2),
        };
        let mut ups = Vec::new();
        for i in 0..nu {
            let m = match x.orientation() {
                Orientation::Cosimplicial => x.coface(n, i),
                Orientation::Simplicial => x.degeneracy(n, i),
            };
            ups.push(t.apply_map(m)?);
        }
        let mut downs = Vec::new();
        for j in 0..nd {
            let m = match x.orientation() {
                Orientation::Cosimplicial => x.codegeneracy(n, j),
                Orientation::Simplicial => x.face(n + 1, j),
            };
            downs.push(t.apply_map(m)?);
        }
        up.push(ups);
        down.push(downs);
    }
    Tower::new(x.ring().clone(), x.orientation(), levels, up, down)
}

/// Apply an additive functor degreewise to a cochain complex.
pub fn map_complex(t: &FunctorSpec, c: &CochainComplex) -> Result<CochainComplex, Error> {
    let terms: Vec<FgModule> = c
        .terms()
        .iter()
        .map(|m| t.apply(m))
        .collect::<Result<_, _>>()?;
    let diffs: Vec<_> = c
        .diffs()
        .iter()
        .map(|d| t.apply_map(d))
        .collect::<Result<Vec<_>, _>>()?;
    CochainComplex::new(c.ring().clone(), terms, diffs)
}

/// π^s of T applied to a weak resolution given as an augmented cosimplicial
/// module: the Dold–Puppe route (levelwise application, then normalization).
pub fn derived_from_tower(
    t: &FunctorSpec,
    y: &AugmentedTower,
    s_max: usize,
) -> Result<Vec<FgModule>, Error> {
    let ty = map_tower(t, &y.tower)?;
    (0..=s_max).map(|s| ty.cohomotopy(s)).collect()
}

/// Right derived functors ℛ^s T(A) for 0 <= s <= s_max via the step
/// resolution. Non-additive functors always route through the denormalized
/// cosimplicial resolution; additive ones use the complex shortcut.
pub fn derived_functor(
    class: &InjectiveClass,
    t: &FunctorSpec,
    a: &FgModule,
    s_max: usize,
) -> Result<DerivedResult, Error> {
    let res = step_resolution(class, a, s_max + 1)?;
    derived_of_resolution(t, &res, s_max)
}

/// Same, but with a caller-supplied resolution.
pub fn derived_of_resolution(
    t: &FunctorSpec,
    res: &Resolution,
    s_max: usize,
) -> Result<DerivedResult, Error> {
    let top = res.complex.top_degree().max(0) as usize;
    if s_max + 1 > top {
        return Err(Error::DegreeOutOfRange {
            requested: s_max as isize,
            max: top as isize - 1,
        });
    }
    let values = if t.is_additive() {
        let tc = map_complex(t, &res.complex)?;
        (0..=s_max).map(|s| tc.homology_module(s)).collect()
    } else {
        let aug = res.augmented_tower()?;
        derived_from_tower(t, &aug, s_max)?
    };
    Ok(DerivedResult {
        values,
        provenance: res.provenance,
        trusted_up_to: s_max,
    })
}

/// Report of a resolution-independence check: the π^s T values per supplied
/// resolution, and whether all pairs agree degreewise.
#[derive(Clone, Debug)]
pub struct InvarianceReport {
    pub per_resolution: Vec<Vec<FgModule>>,
    pub agree: bool,
    pub window: usize,
}

/// Verify that π^s T is independent of the weak resolution: every supplied
/// augmented cosimplicial module must validate, then the values are compared
/// degreewise by invariant factors in the common trusted window.
pub fn derived_invariance_check(
    class: &InjectiveClass,
    t: &FunctorSpec,
    resolutions: &[AugmentedTower],
    s_max: usize,
) -> Result<InvarianceReport, Error> {
    if resolutions.is_empty() {
        return Err(Error::BadStructure("need at least one resolution".into()));
    }
    let mut window = s_max;
    for y in resolutions {
        let report = validate_weak_resolution(class, y)?;
        if !report.is_valid() {
            return Err(Error::InputRejected(format!(
                "a supplied object is not a weak resolution: {:?}",
                report.failures
            )));
        }
        window = window.min(y.tower.n_max().saturating_sub(1));
    }
    let mut per_resolution = Vec::new();
    for y in resolutions {
        per_resolution.push(derived_from_tower(t, y, window)?);
    }
    let agree = per_resolution
        .windows(2)
        .all(|pair| {
            pair[0]
                .iter()
                .zip(pair[1].iter())
                .all(|(a, b)| a.factors() == b.factors())
        });
    Ok(InvarianceReport {
        per_resolution,
        agree,
        window,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ring::BaseRing;
    use num::BigInt;

    fn zmod(m: u64) -> BaseRing {
        BaseRing::modular(m).unwrap()
    }

    #[test]
    fn relative_ext_periodicity() {
        // Over Z/4 with class {Z/4}: R^s Hom(Z/2, -)(Z/2) = Z/2 for all s.
        let ring = zmod(4);
        let z4 = FgModule::free(ring.clone(), 1);
        let z2 = FgModule::cyclic(ring.clone(), 2);
        let class = InjectiveClass::cogenerators(ring, vec![z4]).unwrap();
        let t = FunctorSpec::Hom(z2.clone());
        let r = derived_functor(&class, &t, &z2, 4).unwrap();
        for (s, v) in r.values.iter().enumerate() {
            assert_eq!(v.factors(), &[BigInt::from(2)], "R^{s} should be Z/2");
        }
    }

    #[test]
    fn injective_has_trivial_higher_derived() {
        let ring = zmod(4);
        let z4 = FgModule::free(ring.clone(), 1);
        let class = InjectiveClass::cogenerators(ring, vec![z4.clone()]).unwrap();
        let r = derived_functor(&class, &FunctorSpec::Id, &z4, 3).unwrap();
        assert_eq!(r.values[0], z4);
        for s in 1..=3 {
            assert!(r.values[s].is_zero_module(), "R^{s} of injective must vanish");
        }
    }

    #[test]
    fn field_absolute_derived_vanishes() {
        let f5 = BaseRing::prime_field(5).unwrap();
        let v = FgModule::free(f5.clone(), 2);
        let class = InjectiveClass::field_absolute(f5).unwrap();
        let t = FunctorSpec::Square;
        let r = derived_functor(&class, &t, &v, 2).unwrap();
        assert_eq!(r.values[0].ngens(), 4);
        assert!(r.values[1].is_zero_module());
        assert!(r.values[2].is_zero_module());
    }

    #[test]
    fn additive_shortcut_matches_dold_puppe_route() {
        let ring = zmod(4);
        let z4 = FgModule::free(ring.clone(), 1);
        let z2 = FgModule::cyclic(ring.clone(), 2);
        let class = InjectiveClass::cogenerators(ring, vec![z4]).unwrap();
        let t = FunctorSpec::Hom(z2.clone());
        let res = step_resolution(&class, &z2, 3).unwrap();
        let shortcut = derived_of_resolution(&t, &res, 2).unwrap();
        let aug = res.augmented_tower().unwrap();
        let long_route = derived_from_tower(&t, &aug, 2).unwrap();
        for s in 0..=2 {
            assert_eq!(shortcut.values[s].factors(), long_route[s].factors());
        }
    }

    #[test]
    fn invariance_between_step_and_padded() {
        let ring = zmod(4);
        let z4 = FgModule::free(ring.clone(), 1);
        let z2 = FgModule::cyclic(ring.clone(), 2);
        let class = InjectiveClass::cogenerators(ring, vec![z4.clone()]).unwrap();
        let res = step_resolution(&class, &z2, 3).unwrap();
        let padded = crate::resolution::step::pad_resolution(&res, &z4, 1).unwrap();
        let t = FunctorSpec::Hom(z2.clone());
        let r = derived_invariance_check(
            &class,
            &t,
            &[res.augmented_tower().unwrap(), padded.augmented_tower().unwrap()],
            2,
        )
        .unwrap();
        assert!(r.agree);
    }
}
