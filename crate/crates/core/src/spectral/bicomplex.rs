use crate::cosimplicial::complex::{ChainComplex, CochainComplex};
use crate::error::Error;
use crate::exact::map::ModuleMap;
use crate::exact::module::{direct_sum, DirectSum, FgModule};
use crate::exact::ring::BaseRing;

/// Direction of the second grading: cochain (t-raising) or chain
/// (t-lowering, the shape of the homotopy spectral sequence).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerticalDir {
    Cochain,
    Chain,
}

/// A bounded first-quadrant bicomplex with anticommuting differentials:
/// δ_h δ_h = 0, δ_v δ_v = 0, δ_h δ_v + δ_v δ_h = 0.
#[derive(Clone, Debug)]
pub struct Bicomplex {
    ring: BaseRing,
    v_dir: VerticalDir,
    entries: Vec<Vec<FgModule>>,
    /// h[s][t]: C^{s,t} -> C^{s+1,t} for s < s_max.
    h: Vec<Vec<ModuleMap>>,
    /// Cochain: v[s][t]: C^{s,t} -> C^{s,t+1}; Chain: v[s][t]: C^{s,t+1} -> C^{s,t}.
    v: Vec<Vec<ModuleMap>>,
}

impl Bicomplex {
    pub fn new(
        ring: BaseRing,
        v_dir: VerticalDir,
        entries: Vec<Vec<FgModule>>,
        h: Vec<Vec<ModuleMap>>,
        v: Vec<Vec<ModuleMap>>,
    ) -> Result<Self, Error> {
        if entries.is_empty() || entries.iter().any(|row| row.len() != entries[0].len()) {
            return Err(Error::BadStructure(
                "bicomplex entries must form a nonempty rectangle".into(),
            ));
        }
        let (smax, tmax) = (entries.len() - 1, entries[0].len() - 1);
        for row in &entries {
            for m in row {
                ring.same(m.ring())?;
            }
        }
        if h.len() != smax || h.iter().any(|r| r.len() != tmax + 1) {
            return Err(Error::Shape {
                expected: format!("{smax} x {} horizontal maps", tmax + 1),
                got: format!("{} x ...", h.len()),
                context: "bicomplex".into(),
            });
        }
        if v.len() != smax + 1 || v.iter().any(|r| r.len() != tmax) {
            return Err(Error::Shape {
                expected: format!("{} x {tmax} vertical maps", smax + 1),
                got: format!("{} x ...", v.len()),
                context: "bicomplex".into(),
            });
        }
        let b = Bicomplex {
            ring,
            v_dir,
            entries,
            h,
            v,
        };
        for s in 0..smax {
            for t in 0..=tmax {
                let hm = b.h_map(s, t);
                if hm.domain() != b.entry(s, t) || hm.codomain() != b.entry(s + 1, t) {
                    return Err(Error::Shape {
                        expected: format!("{} -> {}", b.entry(s, t), b.entry(s + 1, t)),
                        got: format!("{} -> {}", hm.domain(), hm.codomain()),
                        context: format!("horizontal map at ({s},{t})"),
                    });
                }
            }
        }
        for s in 0..=smax {
            for t in 0..tmax {
                let (vd, vc) = b.v_endpoints(s, t);
                let vm = b.v_map(s, t);
                if vm.domain() != &vd || vm.codomain() != &vc {
                    return Err(Error::Shape {
                        expected: format!("{vd} -> {vc}"),
                        got: format!("{} -> {}", vm.domain(), vm.codomain()),
                        context: format!("vertical map at ({s},{t})"),
                    });
                }
            }
        }
        // δδ = 0 both ways and anticommutation.
        for t in 0..=tmax {
            for s in 0..smax.saturating_sub(1) {
                if !b.h_map(s, t).then(&b.h_map(s + 1, t)).is_zero_map() {
                    return Err(Error::IdentityViolation(format!(
                        "δ_h δ_h != 0 at ({s},{t})"
                    )));
                }
            }
        }
        for s in 0..=smax {
            for t in 0..tmax.saturating_sub(1) {
                let a = match v_dir {
                    VerticalDir::Cochain => b.v_map(s, t).then(&b.v_map(s, t + 1)),
                    VerticalDir::Chain => b.v_map(s, t + 1).then(&b.v_map(s, t)),
                };
                if !a.is_zero_map() {
                    return Err(Error::IdentityViolation(format!(
                        "δ_v δ_v != 0 at ({s},{t})"
                    )));
                }
            }
        }
        for s in 0..smax {
            for t in 0..tmax {
                let (lhs, rhs) = match v_dir {
                    VerticalDir::Cochain => (
                        b.h_map(s, t).then(&b.v_map(s + 1, t)),
                        b.v_map(s, t).then(&b.h_map(s, t + 1)),
                    ),
                    VerticalDir::Chain => (
                        b.h_map(s, t + 1).then(&b.v_map(s + 1, t)),
                        b.v_map(s, t).then(&b.h_map(s, t)),
                    ),
                };
                if !lhs.add(&rhs).is_zero_map() {
                    return Err(Error::IdentityViolation(format!(
                        "differentials fail to anticommute at ({s},{t})"
                    )));
                }
            }
        }
        Ok(b)
    }

    pub fn ring(&self) -> &BaseRing {
        &self.ring
    }

    pub fn v_dir(&self) -> VerticalDir {
        self.v_dir
    }

    pub fn s_max(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn t_max(&self) -> usize {
        self.entries[0].len() - 1
    }

    pub fn entry(&self, s: usize, t: usize) -> &FgModule {
        &self.entries[s][t]
    }

    pub fn entry_or_zero(&self, s: usize, t: usize) -> FgModule {
        self.entries
            .get(s)
            .and_then(|r| r.get(t))
            .cloned()
            .unwrap_or_else(|| FgModule::zero(self.ring.clone()))
    }

    /// δ_h at (s, t); zero when out of range.
    pub fn h_map(&self, s: usize, t: usize) -> ModuleMap {
        if s < self.entries.len() - 1 && t < self.entries[0].len() {
            self.h[s][t].clone()
        } else {
            self.entry_or_zero(s, t)
                .zero_map_to(&self.entry_or_zero(s + 1, t))
        }
    }

    fn v_endpoints(&self, s: usize, t: usize) -> (FgModule, FgModule) {
        match self.v_dir {
            VerticalDir::Cochain => (self.entry_or_zero(s, t), self.entry_or_zero(s, t + 1)),
            VerticalDir::Chain => (self.entry_or_zero(s, t + 1), self.entry_or_zero(s, t)),
        }
    }

    /// δ_v at vertical slot (s, t): Cochain C^{s,t} -> C^{s,t+1}, Chain
    /// C^{s,t+1} -> C^{s,t}; zero when out of range.
    pub fn v_map(&self, s: usize, t: usize) -> ModuleMap {
        if s < self.entries.len() && t < self.entries[0].len() - 1 {
            self.v[s][t].clone()
        } else {
            let (d, c) = self.v_endpoints(s, t);
            d.zero_map_to(&c)
        }
    }

    /// The s-th column as a complex in t (cochain or chain per direction).
    pub fn column_cochain(&self, s: usize) -> Result<CochainComplex, Error> {
        assert_eq!(self.v_dir, VerticalDir::Cochain);
        CochainComplex::new(
            self.ring.clone(),
            self.entries[s].clone(),
            (0..self.t_max()).map(|t| self.v_map(s, t)).collect(),
        )
    }

    pub fn column_chain(&self, s: usize) -> Result<ChainComplex, Error> {
        assert_eq!(self.v_dir, VerticalDir::Chain);
        ChainComplex::new(
            self.ring.clone(),
            self.entries[s].clone(),
            (0..self.t_max()).map(|t| self.v_map(s, t)).collect(),
        )
    }
}

/// Total complex of a cochain-direction bicomplex: Tot^n = ⊕_{s+t=n} C^{s,t}
/// with differential δ_h + δ_v, plus the per-degree block structure.
pub struct TotalCochain {
    pub complex: CochainComplex,
    /// Per total degree, the (s, t) blocks in s-ascending order.
    pub blocks: Vec<Vec<(usize, usize)>>,
    pub sums: Vec<DirectSum>,
}

pub fn total_cochain(b: &Bicomplex) -> Result<TotalCochain, Error> {
    assert_eq!(b.v_dir(), VerticalDir::Cochain);
    let top = b.s_max() + b.t_max();
    let mut blocks = Vec::new();
    let mut sums = Vec::new();
    for n in 0..=top {
        let mut bl = Vec::new();
        for s in 0..=n.min(b.s_max()) {
            let t = n - s;
            if t <= b.t_max() {
                bl.push((s, t));
            }
        }
        let parts: Vec<FgModule> = bl.iter().map(|&(s, t)| b.entry(s, t).clone()).collect();
        sums.push(direct_sum(b.ring(), &parts));
        blocks.push(bl);
    }
    let terms: Vec<FgModule> = sums.iter().map(|s| s.module.clone()).collect();
    let mut diffs = Vec::new();
    for n in 0..top {
        let mut d = sums[n].module.zero_map_to(&sums[n + 1].module);
        for (k, &(s, t)) in blocks[n].iter().enumerate() {
            // Horizontal component into (s+1, t).
            if let Some(k2) = blocks[n + 1].iter().position(|&p| p == (s + 1, t)) {
                d = d.add(
                    &sums[n].projections[k]
                        .then(&b.h_map(s, t))
                        .then(&sums[n + 1].injections[k2]),
                );
            }
            // Vertical component into (s, t+1).
            if let Some(k2) = blocks[n + 1].iter().position(|&p| p == (s, t + 1)) {
                d = d.add(
                    &sums[n].projections[k]
                        .then(&b.v_map(s, t))
                        .then(&sums[n + 1].injections[k2]),
                );
            }
        }
        diffs.push(d);
    }
    Ok(TotalCochain {
        complex: CochainComplex::new(b.ring().clone(), terms, diffs)?,
        blocks,
        sums,
    })
}

/// Total complex of a chain-direction (sector) bicomplex, graded by
/// n = t - s: Tot_n = ⊕_{t-s=n} C^{s,t} with boundary δ_h + δ_v.
pub struct TotalChain {
    pub complex: ChainComplex,
    pub blocks: Vec<Vec<(usize, usize)>>,
    pub sums: Vec<DirectSum>,
}

pub fn total_chain(b: &Bicomplex) -> Result<TotalChain, Error> {
    assert_eq!(b.v_dir(), VerticalDir::Chain);
    let top = b.t_max();
    let mut blocks = Vec::new();
    let mut sums = Vec::new();
    for n in 0..=top {
        let mut bl = Vec::new();
        for s in 0..=b.s_max() {
            let t = n + s;
            if t <= b.t_max() {
                bl.push((s, t));
            }
        }
        let parts: Vec<FgModule> = bl.iter().map(|&(s, t)| b.entry(s, t).clone()).collect();
        sums.push(direct_sum(b.ring(), &parts));
        blocks.push(bl);
    }
    let terms: Vec<FgModule> = sums.iter().map(|s| s.module.clone()).collect();
    let mut boundaries = Vec::new();
    for n in 0..top {
        // ∂: Tot_{n+1} -> Tot_n.
        let mut d = sums[n + 1].module.zero_map_to(&sums[n].module);
        for (k, &(s, t)) in blocks[n + 1].iter().enumerate() {
            // Horizontal component (s, t) -> (s+1, t): lowers n by one.
            if let Some(k2) = blocks[n].iter().position(|&p| p == (s + 1, t)) {
                d = d.add(
                    &sums[n + 1].projections[k]
                        .then(&b.h_map(s, t))
                        .then(&sums[n].injections[k2]),
                );
            }
            // Vertical component (s, t) -> (s, t-1).
            if t >= 1 {
                if let Some(k2) = blocks[n].iter().position(|&p| p == (s, t - 1)) {
                    d = d.add(
                        &sums[n + 1].projections[k]
                            .then(&b.v_map(s, t - 1))
                            .then(&sums[n].injections[k2]),
                    );
                }
            }
        }
        boundaries.push(d);
    }
    Ok(TotalChain {
        complex: ChainComplex::new(b.ring().clone(), terms, boundaries)?,
        blocks,
        sums,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::matrix::Mat;
    use num::BigInt;

    #[test]
    fn single_entry_total() {
        let ring = BaseRing::Int;
        let m = FgModule::cyclic(ring.clone(), 4);
        let b = Bicomplex::new(
            ring,
            VerticalDir::Cochain,
            vec![vec![m.clone()]],
            vec![],
            vec![vec![]],
        )
        .unwrap();
        let tot = total_cochain(&b).unwrap();
        assert_eq!(tot.complex.term(0), m);
        assert_eq!(tot.complex.top_degree(), 0);
    }

    #[test]
    fn two_entry_sector_example() {
        // Entries Z at (0,1) and (1,1), δ_h = multiplication by 2: reading
        // total degree t - s, H_1 = 0 and H_0 = Z/2.
        let ring = BaseRing::Int;
        let z = FgModule::free(ring.clone(), 1);
        let zero = FgModule::zero(ring.clone());
        let two = ModuleMap::new(z.clone(), z.clone(), Mat::from_int_rows(&[vec![2]])).unwrap();
        let entries = vec![
            vec![zero.clone(), z.clone()],
            vec![zero.clone(), z.clone()],
        ];
        let h = vec![vec![zero.zero_map_to(&zero), two]];
        let v = vec![
            vec![z.clone().zero_map_to(&zero)],
            vec![z.clone().zero_map_to(&zero)],
        ];
        let b = Bicomplex::new(ring, VerticalDir::Chain, entries, h, v).unwrap();
        let tot = total_chain(&b).unwrap();
        assert!(tot.complex.homology_module(1).is_zero_module());
        assert_eq!(tot.complex.homology_module(0).factors(), &[BigInt::from(2)]);
    }
}
