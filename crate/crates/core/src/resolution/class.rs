use crate::error::Error;
use crate::exact::hom::{induced_precompose, HomModule};
use crate::exact::map::ModuleMap;
use crate::exact::module::{direct_sum, FgModule};
use crate::exact::ring::BaseRing;

/// How the injective class is specified.
#[derive(Clone, Debug)]
pub enum ClassMode {
    /// A finite set of cogenerators W_1, ..., W_k.
    Cogenerators(Vec<FgModule>),
    /// Every object is a model; monics are the split monomorphisms.
    AllObjects,
    /// Over a field every object is injective and monic means injective.
    FieldAbsolute,
}

/// An injective class over the base ring, defining the 𝒢-monic and
/// 𝒢-injective predicates and everything built from them.
#[derive(Clone, Debug)]
pub struct InjectiveClass {
    ring: BaseRing,
    mode: ClassMode,
}

impl InjectiveClass {
    pub fn cogenerators(ring: BaseRing, ws: Vec<FgModule>) -> Result<Self, Error> {
        if ws.is_empty() {
            return Err(Error::BadStructure(
                "a cogenerator class needs at least one module".into(),
            ));
        }
        for w in &ws {
            ring.same(w.ring())?;
        }
        Ok(InjectiveClass {
            ring,
            mode: ClassMode::Cogenerators(ws),
        })
    }

    pub fn all_objects(ring: BaseRing) -> Self {
        InjectiveClass {
            ring,
            mode: ClassMode::AllObjects,
        }
    }

    pub fn field_absolute(ring: BaseRing) -> Result<Self, Error> {
        if !ring.is_field() {
            return Err(Error::InvalidRing(format!(
                "field-absolute mode requires a field, got {ring}"
            )));
        }
        Ok(InjectiveClass {
            ring,
            mode: ClassMode::FieldAbsolute,
        })
    }

    pub fn ring(&self) -> &BaseRing {
        &self.ring
    }

    pub fn mode(&self) -> &ClassMode {
        &self.mode
    }

    /// Cogenerators to quantify over for Hom-based checks; `None` in
    /// all-objects mode, which uses splitting-based criteria instead.
    pub fn hom_test_modules(&self) -> Option<Vec<FgModule>> {
        match &self.mode {
            ClassMode::Cogenerators(ws) => Some(ws.clone()),
            ClassMode::FieldAbsolute => Some(vec![FgModule::free(self.ring.clone(), 1)]),
            ClassMode::AllObjects => None,
        }
    }

    /// Is `f` 𝒢-monic: Hom(B, W) -> Hom(A, W) onto for every cogenerator W.
    pub fn is_g_monic(&self, f: &ModuleMap) -> bool {
        match &self.mode {
            ClassMode::Cogenerators(ws) => ws.iter().all(|w| {
                let hom_b = HomModule::new(f.codomain(), w).expect("hom module");
                let hom_a = HomModule::new(f.domain(), w).expect("hom module");
                induced_precompose(&hom_b, &hom_a, f).is_surjective()
            }),
            ClassMode::AllObjects => f.splitting_test().split_mono,
            ClassMode::FieldAbsolute => f.is_injective(),
        }
    }

    /// Is `m` 𝒢-injective; the witness is a retraction of the evaluation
    /// embedding, whose existence is equivalent to injectivity because the
    /// embedding is 𝒢-monic and its target is a product of cogenerators.
    pub fn is_g_injective(&self, m: &FgModule) -> (bool, Option<ModuleMap>) {
        match &self.mode {
            ClassMode::Cogenerators(_) => {
                let (_, e) = self.evaluation_embedding(m);
                let rep = e.splitting_test();
                (rep.split_mono, rep.retraction)
            }
            ClassMode::AllObjects | ClassMode::FieldAbsolute => (true, Some(m.identity_map())),
        }
    }

    /// The finite evaluation embedding e: M -> ⊕_i W_i^{g_i}, indexed by the
    /// deterministic generating set of each Hom(M, W_i). Every map M -> W_i
    /// is a combination of the generators, so e is 𝒢-monic.
    pub fn evaluation_embedding(&self, m: &FgModule) -> (FgModule, ModuleMap) {
        let full = self.evaluation_embedding_full(m);
        (full.target, full.e)
    }

    /// Evaluation embedding with the full coordinate structure retained: per
    /// part the cogenerator index and generator map, plus the Hom modules.
    pub fn evaluation_embedding_full(&self, m: &FgModule) -> EvalEmbedding {
        match &self.mode {
            ClassMode::Cogenerators(ws) => {
                let mut parts: Vec<FgModule> = Vec::new();
                let mut gens: Vec<ModuleMap> = Vec::new();
                let mut part_w: Vec<usize> = Vec::new();
                let mut homs: Vec<HomModule> = Vec::new();
                for (wi, w) in ws.iter().enumerate() {
                    let hom = HomModule::new(m, w).expect("hom module");
                    for g in hom.generators() {
                        parts.push(w.clone());
                        gens.push(g);
                        part_w.push(wi);
                    }
                    homs.push(hom);
                }
                let sum = direct_sum(&self.ring, &parts);
                let mut e = m.zero_map_to(&sum.module);
                for (k, g) in gens.iter().enumerate() {
                    e = e.add(&g.then(&sum.injections[k]));
                }
                EvalEmbedding {
                    target: sum.module.clone(),
                    e,
                    injections: sum.injections,
                    projections: sum.projections,
                    gens,
                    part_w,
                    homs,
                }
            }
            ClassMode::AllObjects | ClassMode::FieldAbsolute => EvalEmbedding {
                target: m.clone(),
                e: m.identity_map(),
                injections: vec![m.identity_map()],
                projections: vec![m.identity_map()],
                gens: vec![m.identity_map()],
                part_w: vec![0],
                homs: vec![],
            },
        }
    }
}

/// The evaluation embedding with its product structure: part `k` is a copy
/// of cogenerator `part_w[k]` indexed by the generator map `gens[k]`.
#[derive(Clone, Debug)]
pub struct EvalEmbedding {
    pub target: FgModule,
    pub e: ModuleMap,
    pub injections: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
    pub gens: Vec<ModuleMap>,
    pub part_w: Vec<usize>,
    pub homs: Vec<HomModule>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::matrix::Mat;
    use num::BigInt;

    fn zmod(m: u64) -> BaseRing {
        BaseRing::modular(m).unwrap()
    }

    #[test]
    fn zero_source_is_always_monic() {
        let ring = zmod(4);
        let class = InjectiveClass::cogenerators(ring.clone(), vec![FgModule::cyclic(ring.clone(), 2)])
            .unwrap();
        let zero = FgModule::zero(ring.clone());
        let m = FgModule::cyclic(ring, 4);
        assert!(class.is_g_monic(&zero.zero_map_to(&m)));
    }

    #[test]
    fn mult_by_two_not_monic_for_z2_class() {
        let ring = zmod(4);
        let z4 = FgModule::free(ring.clone(), 1);
        let class =
            InjectiveClass::cogenerators(ring.clone(), vec![FgModule::cyclic(ring, 2)]).unwrap();
        let two = ModuleMap::new(z4.clone(), z4.clone(), Mat::from_int_rows(&[vec![2]])).unwrap();
        assert!(!class.is_g_monic(&two));
    }

    #[test]
    fn evaluation_embedding_examples() {
        let ring = zmod(4);
        let z4 = FgModule::free(ring.clone(), 1);
        let z2 = FgModule::cyclic(ring.clone(), 2);
        // M = Z/4, class {Z/2}: E = Z/2, e = reduction.
        let class = InjectiveClass::cogenerators(ring.clone(), vec![z2.clone()]).unwrap();
        let (e_mod, e) = class.evaluation_embedding(&z4);
        assert_eq!(e_mod.factors(), &[BigInt::from(2)]);
        assert!(class.is_g_monic(&e));
        // M = Z/2, class {Z/4}: E = Z/4, e = x -> 2x.
        let class4 = InjectiveClass::cogenerators(ring.clone(), vec![z4.clone()]).unwrap();
        let (e_mod, e) = class4.evaluation_embedding(&z2);
        assert_eq!(e_mod.factors(), &[BigInt::from(0)]);
        assert_eq!(e.matrix().at(0, 0).to_integer(), BigInt::from(2));
        assert!(class4.is_g_monic(&e));
        // M = 0: E = 0.
        let zero = FgModule::zero(ring);
        let (e_mod, _) = class.evaluation_embedding(&zero);
        assert!(e_mod.is_zero_module());
    }

    #[test]
    fn injectivity_examples() {
        let ring = zmod(4);
        let z4 = FgModule::free(ring.clone(), 1);
        let z2 = FgModule::cyclic(ring.clone(), 2);
        // Each cogenerator is injective for its own class.
        let class2 = InjectiveClass::cogenerators(ring.clone(), vec![z2.clone()]).unwrap();
        assert!(class2.is_g_injective(&z2).0);
        // Z/2 is not {Z/4}-injective over Z/4.
        let class4 = InjectiveClass::cogenerators(ring.clone(), vec![z4.clone()]).unwrap();
        assert!(!class4.is_g_injective(&z2).0);
        // Z/4 is not {Z/2}-injective over Z/4 (the embedding is the
        // non-split reduction).
        assert!(!class2.is_g_injective(&z4).0);
        // Field-absolute mode makes everything injective.
        let f5 = BaseRing::prime_field(5).unwrap();
        let cls = InjectiveClass::field_absolute(f5.clone()).unwrap();
        assert!(cls.is_g_injective(&FgModule::free(f5, 3)).0);
    }

    #[test]
    fn retract_of_injective_is_injective() {
        let ring = zmod(4);
        let z2 = FgModule::cyclic(ring.clone(), 2);
        let class = InjectiveClass::cogenerators(ring.clone(), vec![z2.clone()]).unwrap();
        // N = Z/2 ⊕ Z/2 is injective; M = Z/2 is a retract.
        let sum = direct_sum(&ring, &[z2.clone(), z2.clone()]);
        assert!(class.is_g_injective(&sum.module).0);
        assert!(class.is_g_injective(&z2).0);
    }
}
