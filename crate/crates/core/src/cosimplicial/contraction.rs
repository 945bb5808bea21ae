use crate::cosimplicial::tower::{AugmentedTower, Orientation};
use crate::error::Error;
use crate::exact::map::ModuleMap;
use crate::exact::matrix::Mat;
use crate::exact::module::FgModule;

/// A level map of a left contraction. The triple-resolution contraction
/// f ↦ μ ∘ Γf is not additive, so set-level maps are allowed alongside
/// genuine module maps; they are stored as value tables over the (finite)
/// domain in canonical element order.
#[derive(Clone, Debug)]
pub enum ContractionMap {
    Linear(ModuleMap),
    Pointwise {
        domain: FgModule,
        codomain: FgModule,
        images: Vec<Mat>,
    },
}

impl ContractionMap {
    pub fn domain(&self) -> &FgModule {
        match self {
            ContractionMap::Linear(f) => f.domain(),
            ContractionMap::Pointwise { domain, .. } => domain,
        }
    }

    pub fn codomain(&self) -> &FgModule {
        match self {
            ContractionMap::Linear(f) => f.codomain(),
            ContractionMap::Pointwise { codomain, .. } => codomain,
        }
    }

    pub fn apply(&self, col: &Mat) -> Mat {
        match self {
            ContractionMap::Linear(f) => f.apply(col),
            ContractionMap::Pointwise {
                domain,
                codomain,
                images,
            } => {
                let idx = domain
                    .element_index(col)
                    .expect("pointwise maps need a finite domain");
                codomain.normalize_column(&images[idx])
            }
        }
    }

    /// Build a pointwise table from an arbitrary function on elements.
    pub fn tabulate(
        domain: &FgModule,
        codomain: &FgModule,
        f: impl Fn(&Mat) -> Mat,
    ) -> Result<Self, Error> {
        let els = domain.elements().ok_or_else(|| {
            Error::BadStructure("cannot tabulate a map on an infinite module".into())
        })?;
        let images = els.iter().map(|e| codomain.normalize_column(&f(e))).collect();
        Ok(ContractionMap::Pointwise {
            domain: domain.clone(),
            codomain: codomain.clone(),
            images,
        })
    }
}

/// A left contraction on an augmented simplicial module: maps
/// s_{-1}: K_n -> K_{n+1} for n >= -1 with d_0 s_{-1} = 1,
/// d_{i+1} s_{-1} = s_{-1} d_i and s_{j+1} s_{-1} = s_{-1} s_j, all verified
/// at construction within the truncation (pointwise when a level map is not
/// linear).
#[derive(Clone, Debug)]
pub struct LeftContraction {
    /// `maps[0]`: K_{-1} -> K_0, and `maps[n+1]`: K_n -> K_{n+1}.
    pub maps: Vec<ContractionMap>,
}

fn agree(
    domain: &FgModule,
    a: &dyn Fn(&Mat) -> Mat,
    b: &dyn Fn(&Mat) -> Mat,
) -> Result<bool, Error> {
    let els = domain.elements().ok_or_else(|| {
        Error::BadStructure("pointwise identity checks need finite modules".into())
    })?;
    Ok(els.iter().all(|e| a(e) == b(e)))
}

impl LeftContraction {
    pub fn from_linear(k: &AugmentedTower, maps: Vec<ModuleMap>) -> Result<Self, Error> {
        LeftContraction::new(k, maps.into_iter().map(ContractionMap::Linear).collect())
    }

    pub fn new(k: &AugmentedTower, maps: Vec<ContractionMap>) -> Result<Self, Error> {
        if k.tower.orientation() != Orientation::Simplicial {
            return Err(Error::OrientationMismatch(
                "left contractions live on augmented simplicial modules".into(),
            ));
        }
        let n_max = k.tower.n_max();
        if maps.len() != n_max + 1 {
            return Err(Error::Shape {
                expected: format!("{} contraction maps", n_max + 1),
                got: format!("{}", maps.len()),
                context: "left contraction".into(),
            });
        }
        let expect_shape = |m: &ContractionMap, dom: &FgModule, cod: &FgModule, at: isize| {
            if m.domain() != dom || m.codomain() != cod {
                Err(Error::Shape {
                    expected: format!("{dom} -> {cod}"),
                    got: format!("{} -> {}", m.domain(), m.codomain()),
                    context: format!("contraction at level {at}"),
                })
            } else {
                Ok(())
            }
        };
        expect_shape(&maps[0], &k.base, k.tower.level(0), -1)?;
        for n in 0..n_max {
            expect_shape(&maps[n + 1], k.tower.level(n), k.tower.level(n + 1), n as isize)?;
        }

        let fail = |msg: String| Err(Error::IdentityViolation(msg));
        // d_0 s_{-1} = 1; at level -1 the face d_0 is the augmentation.
        let aug = k.aug.clone();
        let s = &maps;
        if !agree(&k.base, &|x| aug.apply(&s[0].apply(x)), &|x| {
            k.base.normalize_column(x)
        })? {
            return fail("ε s_{-1} != 1".into());
        }
        for n in 0..n_max {
            let d0 = k.tower.face(n + 1, 0).clone();
            if !agree(k.tower.level(n), &|x| d0.apply(&s[n + 1].apply(x)), &|x| {
                k.tower.level(n).normalize_column(x)
            })? {
                return fail(format!("d_0 s_{{-1}} != 1 at level {n}"));
            }
        }
        // d_{i+1} s_{-1} = s_{-1} d_i (with d_0 = ε at the bottom).
        if n_max >= 1 {
            let d1 = k.tower.face(1, 1).clone();
            if !agree(k.tower.level(0), &|x| d1.apply(&s[1].apply(x)), &|x| {
                s[0].apply(&aug.apply(x))
            })? {
                return fail("d_1 s_{-1} != s_{-1} ε".into());
            }
        }
        for n in 1..n_max {
            for i in 0..=n {
                let dhi = k.tower.face(n + 1, i + 1).clone();
                let dlo = k.tower.face(n, i).clone();
                if !agree(k.tower.level(n), &|x| dhi.apply(&s[n + 1].apply(x)), &|x| {
                    s[n].apply(&dlo.apply(x))
                })? {
                    return fail(format!("d_{} s_{{-1}} != s_{{-1}} d_{i} at level {n}", i + 1));
                }
            }
        }
        // s_{j+1} s_{-1} = s_{-1} s_j including j = -1.
        for n in 0..n_max.saturating_sub(1) {
            let s0 = k.tower.degeneracy(n + 1, 0).clone();
            if !agree(k.tower.level(n), &|x| s0.apply(&s[n + 1].apply(x)), &|x| {
                s[n + 2].apply(&s[n + 1].apply(x))
            })? {
                return fail(format!("s_0 s_{{-1}} != s_{{-1}} s_{{-1}} at level {n}"));
            }
            for j in 0..=n {
                let shi = k.tower.degeneracy(n + 1, j + 1).clone();
                let slo = k.tower.degeneracy(n, j).clone();
                if !agree(k.tower.level(n), &|x| shi.apply(&s[n + 1].apply(x)), &|x| {
                    s[n + 2].apply(&slo.apply(x))
                })? {
                    return fail(format!("s_{} s_{{-1}} != s_{{-1}} s_{j} at level {n}", j + 1));
                }
            }
        }
        Ok(LeftContraction { maps })
    }
}

/// A left contraction forces the augmented Moore complex to be acyclic; the
/// exactness is re-verified in every degree the truncation determines.
pub fn contraction_acyclic(k: &AugmentedTower, c: &LeftContraction) -> Result<bool, Error> {
    // Defensive re-check against a stale contraction.
    let _revalidated = LeftContraction::new(k, c.maps.clone())?;
    if !k.is_augmented_acyclic()? {
        return Err(Error::IdentityViolation(
            "contraction identities hold but the augmented complex is not exact".into(),
        ));
    }
    Ok(true)
}
