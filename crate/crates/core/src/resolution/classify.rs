use crate::cosimplicial::complex::{ChainComplex, ChainMap, CochainComplex, CochainMap};
use crate::error::Error;
use crate::exact::hom::{induced_precompose, HomModule};
use crate::exact::module::FgModule;
use crate::resolution::class::InjectiveClass;

/// Verdict of the model-structure classification of a cochain map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MapClassification {
    pub g_equivalence: bool,
    pub g_cofibration: bool,
    pub g_fibration: bool,
}

/// The chain complex Hom(C^•, W) with Hom(C^n, W) in degree n.
pub fn hom_chain_complex(
    c: &CochainComplex,
    w: &FgModule,
) -> Result<(ChainComplex, Vec<HomModule>), Error> {
    hom_chain_complex_up_to(c, w, c.top_degree().max(0) as usize)
}

/// Same, but padded with zero terms up to a prescribed top degree so two
/// complexes of different lengths can be compared degreewise.
pub fn hom_chain_complex_up_to(
    c: &CochainComplex,
    w: &FgModule,
    top: usize,
) -> Result<(ChainComplex, Vec<HomModule>), Error> {
    let homs: Vec<HomModule> = (0..=top)
        .map(|n| HomModule::new(&c.term(n), w))
        .collect::<Result<_, _>>()?;
    let terms: Vec<FgModule> = homs.iter().map(|h| h.module().clone()).collect();
    let boundaries: Vec<_> = (0..top)
        .map(|n| induced_precompose(&homs[n + 1], &homs[n], &c.diff(n)))
        .collect();
    Ok((ChainComplex::new(c.ring().clone(), terms, boundaries)?, homs))
}

/// Classify a cochain map per the discrete resolution model structure:
/// 𝒢-equivalence (Hom(-, W) homology isomorphism for every cogenerator, or
/// chain homotopy equivalence in all-objects mode), 𝒢-cofibration (𝒢-monic
/// in positive degrees) and 𝒢-fibration (degreewise splittably epic with
/// 𝒢-injective kernel). Both complexes are taken as genuinely bounded, zero
/// beyond their stored range; homology is compared in every degree.
pub fn classify_map(class: &InjectiveClass, f: &CochainMap) -> Result<MapClassification, Error> {
    let top = f
        .source()
        .top_degree()
        .max(f.target().top_degree())
        .max(0) as usize;
    classify_map_impl(class, f, top, top + 1)
}

/// Like [`classify_map`], but the homology comparison for the equivalence
/// verdict stops at `equiv_window`. Use this when the target is a truncation
/// of a longer complex, whose top cohomology the stored range does not
/// determine.
pub fn classify_map_windowed(
    class: &InjectiveClass,
    f: &CochainMap,
    equiv_window: usize,
) -> Result<MapClassification, Error> {
    let top = f
        .source()
        .top_degree()
        .max(f.target().top_degree())
        .max(0) as usize;
    classify_map_impl(class, f, top, equiv_window)
}

fn classify_map_impl(
    class: &InjectiveClass,
    f: &CochainMap,
    top: usize,
    equiv_window: usize,
) -> Result<MapClassification, Error> {
    let g_equivalence = match class.hom_test_modules() {
        Some(ws) => {
            let mut ok = true;
            'outer: for w in &ws {
                let (cx, homs_x) = hom_chain_complex_up_to(f.source(), w, top)?;
                let (cy, homs_y) = hom_chain_complex_up_to(f.target(), w, top)?;
                let comps: Vec<_> = (0..=top)
                    .map(|n| induced_precompose(&homs_y[n], &homs_x[n], &f.component(n)))
                    .collect();
                let chain_map = ChainMap::new(cy, cx, comps)?;
                for s in 0..=equiv_window.min(top + 1) {
                    if !chain_map.induced_on_homology(s).is_isomorphism() {
                        ok = false;
                        break 'outer;
                    }
                }
            }
            ok
        }
        None => f.is_homotopy_equivalence(),
    };

    let mut g_cofibration = true;
    for n in 1..=top {
        if !class.is_g_monic(&f.component(n)) {
            g_cofibration = false;
            break;
        }
    }

    let mut g_fibration = true;
    for n in 0..=top {
        let comp = f.component(n);
        let rep = comp.splitting_test();
        if !rep.split_epi {
            g_fibration = false;
            break;
        }
        let (inj, _) = class.is_g_injective(&comp.kernel().module);
        if !inj {
            g_fibration = false;
            break;
        }
    }

    Ok(MapClassification {
        g_equivalence,
        g_cofibration,
        g_fibration,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::map::ModuleMap;
    use crate::exact::matrix::Mat;
    use crate::exact::ring::BaseRing;
    use crate::resolution::step::step_resolution;

    fn zmod(m: u64) -> BaseRing {
        BaseRing::modular(m).unwrap()
    }

    #[test]
    fn identity_map_is_everything() {
        let ring = zmod(4);
        let z4 = FgModule::free(ring.clone(), 1);
        let class = InjectiveClass::cogenerators(ring.clone(), vec![z4.clone()]).unwrap();
        let c = CochainComplex::concentrated(z4.clone());
        let id = CochainMap::identity(&c);
        let v = classify_map(&class, &id).unwrap();
        assert!(v.g_equivalence && v.g_cofibration && v.g_fibration);
    }

    #[test]
    fn termwise_injective_to_zero_is_fibration() {
        let ring = zmod(4);
        let z4 = FgModule::free(ring.clone(), 1);
        let class = InjectiveClass::cogenerators(ring.clone(), vec![z4.clone()]).unwrap();
        let z2 = FgModule::cyclic(ring.clone(), 2);
        let res = step_resolution(&class, &z2, 2).unwrap();
        let zero_cx = CochainComplex::zero_complex(ring);
        let comps: Vec<ModuleMap> = (0..=res.complex.top_degree() as usize)
            .map(|n| res.complex.term(n).zero_map_to(&zero_cx.term(n)))
            .collect();
        let to_zero = CochainMap::new(res.complex.clone(), zero_cx, comps).unwrap();
        let v = classify_map(&class, &to_zero).unwrap();
        assert!(v.g_fibration);
    }

    #[test]
    fn augmentation_into_resolution_is_equivalence_not_fibration() {
        // Class {Z/4} over Z/4, A = Z/2 concentrated in degree 0, mapped to
        // its step resolution complex: a 𝒢-equivalence, but degree 0 is not
        // splittably epic (it is not even epi).
        let ring = zmod(4);
        let z4 = FgModule::free(ring.clone(), 1);
        let z2 = FgModule::cyclic(ring.clone(), 2);
        let class = InjectiveClass::cogenerators(ring.clone(), vec![z4.clone()]).unwrap();
        let res = step_resolution(&class, &z2, 3).unwrap();
        let a_cx = CochainComplex::concentrated(z2.clone());
        let mut comps = vec![res.aug.clone()];
        for n in 1..=res.complex.top_degree() as usize {
            comps.push(a_cx.term(n).zero_map_to(&res.complex.term(n)));
        }
        let f = CochainMap::new(a_cx, res.complex.clone(), comps).unwrap();
        // The truncation determines Hom-homology only below the top degree;
        // inside that window the map is an equivalence.
        let window = res.complex.top_degree() as usize - 1;
        let v = classify_map_windowed(&class, &f, window).unwrap();
        assert!(v.g_equivalence);
        assert!(!v.g_fibration);
        // Read strictly as bounded complexes, the periodic resolution has
        // top-degree cohomology the constant complex lacks.
        let strict = classify_map(&class, &f).unwrap();
        assert!(!strict.g_equivalence);
    }

    #[test]
    fn cofibrations_compose() {
        let ring = zmod(4);
        let z2 = FgModule::cyclic(ring.clone(), 2);
        let z4 = FgModule::free(ring.clone(), 1);
        let class = InjectiveClass::cogenerators(ring.clone(), vec![z2.clone()]).unwrap();
        // In positive degrees use 𝒢-monic maps; degree 0 is unconstrained.
        let c0 = CochainComplex::new(
            ring.clone(),
            vec![FgModule::zero(ring.clone()), z4.clone()],
            vec![FgModule::zero(ring.clone()).zero_map_to(&z4)],
        )
        .unwrap();
        let red = ModuleMap::new(z4.clone(), z2.clone(), Mat::from_int_rows(&[vec![1]])).unwrap();
        let c1 = CochainComplex::new(
            ring.clone(),
            vec![FgModule::zero(ring.clone()), z2.clone()],
            vec![FgModule::zero(ring.clone()).zero_map_to(&z2)],
        )
        .unwrap();
        let f = CochainMap::new(
            c0.clone(),
            c1.clone(),
            vec![FgModule::zero(ring.clone()).identity_map(), red.clone()],
        )
        .unwrap();
        // Reduction Z/4 -> Z/2 is 𝒢-monic for the class {Z/2}: Hom(Z/2, Z/2)
        // -> Hom(Z/4, Z/2) is onto.
        let v1 = classify_map(&class, &f).unwrap();
        assert!(v1.g_cofibration);
        let g = CochainMap::new(
            c1.clone(),
            c1.clone(),
            vec![
                FgModule::zero(ring.clone()).identity_map(),
                z2.identity_map(),
            ],
        )
        .unwrap();
        let v2 = classify_map(&class, &g).unwrap();
        assert!(v2.g_cofibration);
        let composite = CochainMap::new(
            c0,
            c1,
            vec![FgModule::zero(ring).identity_map(), red.then(&z2.identity_map())],
        )
        .unwrap();
        let v3 = classify_map(&class, &composite).unwrap();
        assert!(v3.g_cofibration);
    }
}
