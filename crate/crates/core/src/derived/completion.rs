use crate::error::Error;
use crate::exact::map::{corestrict, ModuleMap};
use crate::exact::module::{FgModule, Submodule};
use crate::resolution::class::{ClassMode, InjectiveClass};
use crate::resolution::step::step_resolution;
use crate::exact::hom::{induced_precompose, HomModule};

/// The discrete 𝒢-completion of a module: the equalizer of the first two
/// cofaces of a 𝒢-resolution, computed as the kernel of the degree-0
/// normalized differential of the step resolution.
#[derive(Clone, Debug)]
pub struct Completion {
    pub module: FgModule,
    /// α: A -> L̂A induced by the augmentation.
    pub alpha: ModuleMap,
    /// L̂A as a submodule of the degree-0 term of the step resolution.
    pub sub: Submodule,
}

pub fn completion(class: &InjectiveClass, a: &FgModule) -> Result<Completion, Error> {
    if matches!(class.mode(), ClassMode::AllObjects) {
        return Err(Error::BadStructure(
            "completion needs a cogenerator or field-absolute class".into(),
        ));
    }
    let res = step_resolution(class, a, 1)?;
    let sub = res.complex.diff(0).kernel();
    let alpha = corestrict(&res.aug, &sub)
        .expect("the augmentation equalizes the two cofaces");
    Ok(Completion {
        module: sub.module.clone(),
        alpha,
        sub,
    })
}

/// Functorial action of the completion: L̂f: L̂A -> L̂B for f: A -> B. The
/// (W, h)-coordinate of the target embedding evaluates on L̂A as h∘f does,
/// which the equalizer property extends along Hom(A, W).
pub fn completion_map(
    class: &InjectiveClass,
    f: &ModuleMap,
    comp_a: &Completion,
    comp_b: &Completion,
) -> Result<ModuleMap, Error> {
    let emb_a = class.evaluation_embedding_full(f.domain());
    let emb_b = class.evaluation_embedding_full(f.codomain());
    let mut into_i0b = comp_a.module.zero_map_to(&emb_b.target);
    for (t, h) in emb_b.gens.iter().enumerate() {
        let wi = emb_b.part_w[t];
        // Express h∘f in the generators of Hom(A, W) and evaluate each
        // generator as a coordinate projection of the source embedding.
        let pulled = f.then(h);
        let coeffs = emb_a.homs[wi].map_to_coeffs(&pulled);
        // Component index into the source part list: parts of cogenerator wi
        // start after all parts of earlier cogenerators.
        let mut base = 0usize;
        for earlier in 0..wi {
            base += emb_a.homs[earlier].components().len();
        }
        let w = h.codomain().clone();
        let mut eval = comp_a.module.zero_map_to(&w);
        for k in 0..coeffs.rows() {
            let proj = comp_a
                .sub
                .incl
                .then(&emb_a.projections[base + k])
                .scale_big(coeffs.at(k, 0));
            eval = eval.add(&proj);
        }
        into_i0b = into_i0b.add(&eval.then(&emb_b.injections[t]));
    }
    corestrict(&into_i0b, &comp_b.sub).ok_or_else(|| {
        Error::IdentityViolation("completion image fails the equalizer conditions".into())
    })
}

/// The triple multiplication μ: L̂L̂A -> L̂A of the codensity completion
/// triple: each coordinate of L̂A is read off L̂L̂A through the projection
/// seen as an element of Hom(L̂A, W).
pub fn completion_mult(
    class: &InjectiveClass,
    comp_a: &Completion,
    comp_la: &Completion,
) -> Result<ModuleMap, Error> {
    let emb_a = class.evaluation_embedding_full(&comp_a.alpha.domain().clone());
    let emb_la = class.evaluation_embedding_full(&comp_a.module);
    let mut into_i0a = comp_la.module.zero_map_to(&emb_a.target);
    for (t, _h) in emb_a.gens.iter().enumerate() {
        let wi = emb_a.part_w[t];
        // π_t: L̂A -> W as an element of Hom(L̂A, W).
        let pi = comp_a.sub.incl.then(&emb_a.projections[t]);
        let coeffs = emb_la.homs[wi].map_to_coeffs(&pi);
        let mut base = 0usize;
        for earlier in 0..wi {
            base += emb_la.homs[earlier].components().len();
        }
        let w = emb_a.projections[t].codomain().clone();
        let mut eval = comp_la.module.zero_map_to(&w);
        for k in 0..coeffs.rows() {
            let proj = comp_la
                .sub
                .incl
                .then(&emb_la.projections[base + k])
                .scale_big(coeffs.at(k, 0));
            eval = eval.add(&proj);
        }
        into_i0a = into_i0a.add(&eval.then(&emb_a.injections[t]));
    }
    corestrict(&into_i0a, &comp_a.sub).ok_or_else(|| {
        Error::IdentityViolation("μ image fails the equalizer conditions".into())
    })
}

/// Completeness classification of Def 8.3 shape: complete when α is an
/// isomorphism, good when α is a 𝒢-equivalence of modules (Hom(-, W)
/// bijective for every cogenerator), otherwise bad with the completion
/// tower iterated up to a cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Completeness {
    Complete,
    GoodNotComplete,
    /// No stabilization within the given number of completion iterations.
    BadWindow(usize),
}

#[derive(Clone, Debug)]
pub struct CompletenessReport {
    pub class: Completeness,
    pub completion: Completion,
    /// Iterated completions A, L̂A, L̂L̂A, ... as far as computed.
    pub trace: Vec<FgModule>,
}

pub const DEFAULT_BAD_CAP: usize = 4;

/// Is f a 𝒢-equivalence of modules: Hom(f, W) bijective for each cogenerator.
pub fn is_g_equivalence_of_modules(class: &InjectiveClass, f: &ModuleMap) -> Result<bool, Error> {
    match class.hom_test_modules() {
        Some(ws) => {
            for w in &ws {
                let hom_b = HomModule::new(f.codomain(), w)?;
                let hom_a = HomModule::new(f.domain(), w)?;
                if !induced_precompose(&hom_b, &hom_a, f).is_isomorphism() {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        None => Ok(f.is_isomorphism()),
    }
}

pub fn completeness_classify(
    class: &InjectiveClass,
    a: &FgModule,
    cap: usize,
) -> Result<CompletenessReport, Error> {
    let comp = completion(class, a)?;
    let mut trace = vec![a.clone(), comp.module.clone()];
    if comp.alpha.is_isomorphism() {
        return Ok(CompletenessReport {
            class: Completeness::Complete,
            completion: comp,
            trace,
        });
    }
    if is_g_equivalence_of_modules(class, &comp.alpha)? {
        // Good: L̂A is complete, and idempotence L̂L̂A ≅ L̂A follows.
        let comp2 = completion(class, &comp.module)?;
        debug_assert!(comp2.alpha.is_isomorphism());
        trace.push(comp2.module.clone());
        return Ok(CompletenessReport {
            class: Completeness::GoodNotComplete,
            completion: comp,
            trace,
        });
    }
    // Bad: iterate the completion up to the cap and report non-stabilization.
    let mut current = comp.module.clone();
    for _ in 1..cap {
        let next = completion(class, &current)?;
        trace.push(next.module.clone());
        current = next.module;
    }
    Ok(CompletenessReport {
        class: Completeness::BadWindow(cap),
        completion: comp,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::matrix::Mat;
    use crate::exact::ring::BaseRing;

    fn zmod(m: u64) -> BaseRing {
        BaseRing::modular(m).unwrap()
    }

    #[test]
    fn completion_of_z4_by_z2_class() {
        let ring = zmod(4);
        let z4 = FgModule::free(ring.clone(), 1);
        let z2 = FgModule::cyclic(ring.clone(), 2);
        let class = InjectiveClass::cogenerators(ring, vec![z2.clone()]).unwrap();
        let c = completion(&class, &z4).unwrap();
        assert_eq!(c.module, z2);
        // α is the reduction.
        assert!(c.alpha.is_surjective());
        assert!(!c.alpha.is_isomorphism());
    }

    #[test]
    fn completion_of_z_by_z2_class_over_z() {
        let ring = BaseRing::Int;
        let z = FgModule::free(ring.clone(), 1);
        let z2 = FgModule::cyclic(ring.clone(), 2);
        let class = InjectiveClass::cogenerators(ring, vec![z2.clone()]).unwrap();
        let c = completion(&class, &z).unwrap();
        assert_eq!(c.module, z2);
    }

    #[test]
    fn injective_is_complete() {
        let ring = zmod(4);
        let z2 = FgModule::cyclic(ring.clone(), 2);
        let class = InjectiveClass::cogenerators(ring, vec![z2.clone()]).unwrap();
        let r = completeness_classify(&class, &z2, DEFAULT_BAD_CAP).unwrap();
        assert_eq!(r.class, Completeness::Complete);
    }

    #[test]
    fn z_is_good_not_complete_for_z2() {
        let ring = BaseRing::Int;
        let z = FgModule::free(ring.clone(), 1);
        let z2 = FgModule::cyclic(ring.clone(), 2);
        let class = InjectiveClass::cogenerators(ring, vec![z2.clone()]).unwrap();
        let r = completeness_classify(&class, &z, DEFAULT_BAD_CAP).unwrap();
        assert_eq!(r.class, Completeness::GoodNotComplete);
    }

    #[test]
    fn completion_triple_laws_on_small_corpus() {
        let ring = zmod(4);
        let z4 = FgModule::free(ring.clone(), 1);
        let z2 = FgModule::cyclic(ring.clone(), 2);
        let class = InjectiveClass::cogenerators(ring.clone(), vec![z2.clone()]).unwrap();
        for a in [z4.clone(), z2.clone(), FgModule::zero(ring.clone())] {
            let comp_a = completion(&class, &a).unwrap();
            let comp_la = completion(&class, &comp_a.module).unwrap();
            let mu = completion_mult(&class, &comp_a, &comp_la).unwrap();
            // μ ∘ α_{L̂A} = id.
            assert!(comp_la.alpha.then(&mu).is_identity());
            // μ ∘ L̂α = id.
            let lhat_alpha = completion_map(&class, &comp_a.alpha, &comp_a, &comp_la).unwrap();
            assert!(lhat_alpha.then(&mu).is_identity());
        }
    }

    #[test]
    fn completion_is_functorial() {
        let ring = zmod(4);
        let z4 = FgModule::free(ring.clone(), 1);
        let z2 = FgModule::cyclic(ring.clone(), 2);
        let class = InjectiveClass::cogenerators(ring, vec![z2.clone()]).unwrap();
        let comp4 = completion(&class, &z4).unwrap();
        let comp2 = completion(&class, &z2).unwrap();
        let red = ModuleMap::new(z4.clone(), z2.clone(), Mat::from_int_rows(&[vec![1]])).unwrap();
        let lf = completion_map(&class, &red, &comp4, &comp2).unwrap();
        // Naturality square: α_B ∘ f = L̂f ∘ α_A.
        assert_eq!(red.then(&comp2.alpha), comp4.alpha.then(&lf));
        // Identity functoriality.
        let lid = completion_map(&class, &z4.identity_map(), &comp4, &comp4).unwrap();
        assert!(lid.is_identity());
    }

    #[test]
    fn comma_category_oracle_confirms_equalizer() {
        // L̂(Z/4) over class {Z/2}: the comma-category limit over maps into
        // W and W ⊕ W equals Z/2.
        let ring = zmod(4);
        let z4 = FgModule::free(ring.clone(), 1);
        let z2 = FgModule::cyclic(ring.clone(), 2);
        let class = InjectiveClass::cogenerators(ring.clone(), vec![z2.clone()]).unwrap();
        let lim = comma_limit_oracle(&class, &z4, &z2);
        let c = completion(&class, &z4).unwrap();
        assert_eq!(lim.factors(), c.module.factors());
    }

    /// Clean oracle: limit over the finite diagram of all maps A -> W and
    /// A -> W², cut out of the big product by kernel conditions.
    fn comma_limit_oracle(class: &InjectiveClass, a: &FgModule, w: &FgModule) -> FgModule {
        use crate::exact::matrix::Mat;
        use crate::exact::module::{direct_sum, submodule};
        let ring = class.ring().clone();
        let w2 = direct_sum(&ring, &[w.clone(), w.clone()]);
        let hom_w = HomModule::new(a, w).unwrap();
        let hom_w2 = HomModule::new(a, &w2.module).unwrap();
        let mut objects: Vec<(FgModule, ModuleMap)> = Vec::new();
        for f in hom_w.enumerate_maps().unwrap() {
            objects.push((w.clone(), f));
        }
        for g in hom_w2.enumerate_maps().unwrap() {
            objects.push((w2.module.clone(), g));
        }
        let parts: Vec<FgModule> = objects.iter().map(|(i, _)| i.clone()).collect();
        let big = direct_sum(&ring, &parts);
        let mut condition_maps: Vec<ModuleMap> = Vec::new();
        for (p1, (i1, u1)) in objects.iter().enumerate() {
            for (p2, (i2, u2)) in objects.iter().enumerate() {
                let hom12 = HomModule::new(i1, i2).unwrap();
                for m in hom12.enumerate_maps().unwrap() {
                    if &u1.then(&m) == u2 {
                        condition_maps.push(big.projections[p1].then(&m).sub(&big.projections[p2]));
                    }
                }
            }
        }
        let mats: Vec<Mat> = condition_maps.iter().map(|c| c.matrix().clone()).collect();
        let stacked = Mat::vstack(&mats.iter().collect::<Vec<_>>());
        let rels: Vec<Mat> = condition_maps
            .iter()
            .map(|c| c.codomain().rel_lattice())
            .collect();
        let rel = Mat::block_diag(&rels.iter().collect::<Vec<_>>());
        let joint = Mat::hstack(&[&stacked, &rel]);
        let null = joint.nullspace();
        let xs = null.select_rows(&(0..big.module.ngens()).collect::<Vec<_>>());
        submodule(&big.module, &xs).module
    }
}
