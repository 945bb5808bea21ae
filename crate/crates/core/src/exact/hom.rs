use crate::error::Error;
use crate::exact::map::ModuleMap;
use crate::exact::matrix::Mat;
use crate::exact::module::{canonicalize, FgModule};
use num::{BigInt, BigRational, Integer, One, Zero};

/// One cyclic summand of a Hom group: the maps sending the `col`-th domain
/// generator to multiples of `gen_value` times the `row`-th codomain
/// generator. `order` is the order of the summand (0 for a free one).
#[derive(Clone, Debug)]
pub struct HomComponent {
    pub row: usize,
    pub col: usize,
    pub order: BigInt,
    pub gen_value: BigInt,
}

/// The module Hom(M, N) with a deterministic generating set of actual maps
/// and exact conversion between maps and coordinates.
#[derive(Clone, Debug)]
pub struct HomModule {
    source: FgModule,
    target: FgModule,
    components: Vec<HomComponent>,
    module: FgModule,
    to_canon: Mat,
    from_canon: Mat,
}

impl HomModule {
    pub fn new(source: &FgModule, target: &FgModule) -> Result<Self, Error> {
        source.ring().same(target.ring())?;
        let ring = source.ring();
        let src_ann = source.ann_lifts();
        let tgt_ann = target.ann_lifts();
        let mut components = Vec::new();
        // Component order: row-major positions in the matrix of the map, which
        // sorts the generators lexicographically by their matrix entries in
        // canonical bases.
        for row in 0..target.ngens() {
            for col in 0..source.ngens() {
                let alpha = &src_ann[col];
                let beta = &tgt_ann[row];
                if beta.is_zero() {
                    // Characteristic-zero free target generator.
                    if alpha.is_zero() {
                        components.push(HomComponent {
                            row,
                            col,
                            order: BigInt::zero(),
                            gen_value: BigInt::one(),
                        });
                    }
                    // Torsion source into free target admits only zero.
                    continue;
                }
                let g = alpha.gcd(beta);
                debug_assert!(!g.is_zero());
                if g.is_one() {
                    continue;
                }
                components.push(HomComponent {
                    row,
                    col,
                    order: g.clone(),
                    gen_value: beta / &g,
                });
            }
        }
        let orders: Vec<BigInt> = components.iter().map(|c| c.order.clone()).collect();
        let mut pres = Mat::zero(orders.len(), orders.len());
        for (i, o) in orders.iter().enumerate() {
            pres.set(i, i, BigRational::from(o.clone()));
        }
        let canon = canonicalize(ring, orders.len(), &pres);
        Ok(HomModule {
            source: source.clone(),
            target: target.clone(),
            components,
            module: canon.module,
            to_canon: canon.to_canon,
            from_canon: canon.from_canon,
        })
    }

    /// The abstract module isomorphic to Hom(source, target).
    pub fn module(&self) -> &FgModule {
        &self.module
    }

    pub fn source(&self) -> &FgModule {
        &self.source
    }

    pub fn target(&self) -> &FgModule {
        &self.target
    }

    pub fn components(&self) -> &[HomComponent] {
        &self.components
    }

    /// Relation lattice of the component coordinates: one column per torsion
    /// component, carrying its integer annihilator.
    pub fn component_rel_lattice(&self) -> Mat {
        let ring = self.source.ring();
        let anns: Vec<BigInt> = self
            .components
            .iter()
            .map(|c| ring.ann_of_factor(&c.order))
            .collect();
        let idx: Vec<usize> = (0..anns.len()).filter(|&i| !anns[i].is_zero()).collect();
        let mut m = Mat::zero(anns.len(), idx.len());
        for (c, &i) in idx.iter().enumerate() {
            m.set(i, c, BigRational::from(anns[i].clone()));
        }
        m
    }

    /// The deterministic generating set, one map per component.
    pub fn generators(&self) -> Vec<ModuleMap> {
        self.components
            .iter()
            .map(|c| {
                let mut m = Mat::zero(self.target.ngens(), self.source.ngens());
                m.set(c.row, c.col, BigRational::from(c.gen_value.clone()));
                ModuleMap::new(self.source.clone(), self.target.clone(), m)
                    .expect("hom generator is well defined")
            })
            .collect()
    }

    /// Coordinates of a map in the component basis.
    pub fn map_to_coeffs(&self, f: &ModuleMap) -> Mat {
        assert_eq!(f.domain(), &self.source, "hom coefficient domain mismatch");
        assert_eq!(f.codomain(), &self.target, "hom coefficient codomain mismatch");
        let mut used = vec![false; self.target.ngens() * self.source.ngens()];
        let mut out = Mat::zero(self.components.len(), 1);
        for (k, c) in self.components.iter().enumerate() {
            used[c.row * self.source.ngens() + c.col] = true;
            let entry = f.matrix().at(c.row, c.col);
            if c.gen_value.is_one() {
                out.set(k, 0, entry.clone());
            } else {
                let q = entry / BigRational::from(c.gen_value.clone());
                debug_assert!(q.is_integer(), "entry must be a multiple of the generator value");
                out.set(k, 0, q);
            }
        }
        for row in 0..self.target.ngens() {
            for col in 0..self.source.ngens() {
                if !used[row * self.source.ngens() + col] {
                    debug_assert!(
                        f.matrix().at(row, col).is_zero(),
                        "nonzero entry at a position with trivial hom component"
                    );
                }
            }
        }
        out
    }

    /// The map with the given component coordinates.
    pub fn coeffs_to_map(&self, coeffs: &Mat) -> ModuleMap {
        assert_eq!(coeffs.rows(), self.components.len());
        let mut m = Mat::zero(self.target.ngens(), self.source.ngens());
        for (k, c) in self.components.iter().enumerate() {
            let cur = m.at(c.row, c.col).clone();
            m.set(
                c.row,
                c.col,
                cur + coeffs.at(k, 0) * BigRational::from(c.gen_value.clone()),
            );
        }
        ModuleMap::new(self.source.clone(), self.target.clone(), m)
            .expect("hom coordinates give a well-defined map")
    }

    /// The map corresponding to an element of the canonical module.
    pub fn element_to_map(&self, canon_coords: &Mat) -> ModuleMap {
        self.coeffs_to_map(&self.from_canon.mul(canon_coords))
    }

    pub fn map_to_element(&self, f: &ModuleMap) -> Mat {
        self.module
            .normalize_column(&self.to_canon.mul(&self.map_to_coeffs(f)))
    }

    /// All maps source -> target in the deterministic element order of the
    /// canonical module; `None` if the Hom set is infinite.
    pub fn enumerate_maps(&self) -> Option<Vec<ModuleMap>> {
        let els = self.module.elements()?;
        Some(els.iter().map(|e| self.element_to_map(e)).collect())
    }

    /// Index of a map in [`HomModule::enumerate_maps`] order.
    pub fn index_of(&self, f: &ModuleMap) -> Option<usize> {
        let coords = self.map_to_element(f);
        let anns = self.module.ann_lifts();
        let mut idx = BigInt::zero();
        for i in 0..self.module.ngens() {
            if anns[i].is_zero() {
                return None;
            }
            idx = idx * &anns[i] + coords.at(i, 0).to_integer();
        }
        let total = self.module.element_count()?;
        debug_assert!(idx < total);
        idx.try_into().ok()
    }
}

/// The map Hom(B, W) -> Hom(A, W) induced by precomposition with `f: A -> B`,
/// between the canonical hom modules.
pub fn induced_precompose(hom_b: &HomModule, hom_a: &HomModule, f: &ModuleMap) -> ModuleMap {
    assert_eq!(hom_b.target(), hom_a.target());
    assert_eq!(f.domain(), hom_a.source());
    assert_eq!(f.codomain(), hom_b.source());
    let mut comp = Mat::zero(hom_a.components().len(), hom_b.components().len());
    for (k, gen) in hom_b.generators().iter().enumerate() {
        let pulled = f.then(gen);
        let col = hom_a.map_to_coeffs(&pulled);
        for i in 0..comp.rows() {
            comp.set(i, k, col.at(i, 0).clone());
        }
    }
    let mat = hom_a.to_canon.mul(&comp).mul(&hom_b.from_canon);
    ModuleMap::new(hom_b.module().clone(), hom_a.module().clone(), mat)
        .expect("precomposition is additive and well defined")
}

/// The map Hom(M, N) -> Hom(M, N') induced by postcomposition with
/// `g: N -> N'`, between the canonical hom modules.
pub fn induced_postcompose(hom_n: &HomModule, hom_n2: &HomModule, g: &ModuleMap) -> ModuleMap {
    assert_eq!(hom_n.source(), hom_n2.source());
    assert_eq!(g.domain(), hom_n.target());
    assert_eq!(g.codomain(), hom_n2.target());
    let mut comp = Mat::zero(hom_n2.components().len(), hom_n.components().len());
    for (k, gen) in hom_n.generators().iter().enumerate() {
        let pushed = gen.then(g);
        let col = hom_n2.map_to_coeffs(&pushed);
        for i in 0..comp.rows() {
            comp.set(i, k, col.at(i, 0).clone());
        }
    }
    let mat = hom_n2.to_canon.mul(&comp).mul(&hom_n.from_canon);
    ModuleMap::new(hom_n.module().clone(), hom_n2.module().clone(), mat)
        .expect("postcomposition is additive and well defined")
}
