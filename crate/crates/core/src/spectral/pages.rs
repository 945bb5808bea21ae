use crate::cosimplicial::complex::{ChainComplex, CochainComplex};
use crate::cosimplicial::tower::{Orientation, Tower};
use crate::error::Error;
use crate::exact::map::{corestrict, descend, ModuleMap};
use crate::exact::matrix::Mat;
use crate::exact::module::{canonicalize, FgModule};
use crate::spectral::bicomplex::{total_chain, Bicomplex, TotalChain, VerticalDir};
use crate::spectral::bicosimplicial::Bitower;
use std::collections::BTreeMap;

/// One page of the homotopy spectral sequence: entries E_r^{s,t} in the
/// sector t >= s >= 0 and differentials d_r: E_r^{s,t} -> E_r^{s+r,t+r-1}.
#[derive(Clone, Debug)]
pub struct SpectralSequencePage {
    pub r: usize,
    pub entries: BTreeMap<(usize, usize), FgModule>,
    pub differentials: BTreeMap<(usize, usize), ModuleMap>,
}

/// Comparison of the stable page with the filtration of H(Tot) in one total
/// degree: per filtration slot the E_inf entry and the graded piece.
#[derive(Clone, Debug)]
pub struct AbutmentDegree {
    pub n: usize,
    pub h_tot: FgModule,
    /// (s, t, E_inf entry, graded piece of H_n).
    pub pieces: Vec<(usize, usize, FgModule, FgModule)>,
    pub graded_matches: bool,
    /// Whether H_n is the direct sum of its graded pieces (no extension
    /// problem); cardinalities always agree.
    pub extension_split: bool,
}

#[derive(Clone, Debug)]
pub struct SsReport {
    pub pages: Vec<SpectralSequencePage>,
    pub e_inf: SpectralSequencePage,
    pub stabilized_at: usize,
    pub abutment: Vec<AbutmentDegree>,
}

struct Filtration<'a> {
    b: &'a Bicomplex,
    tot: TotalChain,
}

struct Entry {
    s: usize,
    t: usize,
    module: FgModule,
    /// Lattice basis of Z_r in Tot_n coordinates.
    z: Mat,
    /// Denominator lattice (boundaries and higher filtration) plus ambient
    /// relations, as solver columns.
    rel_solver: Mat,
    to_canon: Mat,
    from_canon: Mat,
}

impl<'a> Filtration<'a> {
    fn new(b: &'a Bicomplex) -> Result<Self, Error> {
        let tot = total_chain(b)?;
        Ok(Filtration { b, tot })
    }

    fn n_top(&self) -> usize {
        self.b.t_max()
    }

    fn tot_module(&self, n: isize) -> FgModule {
        if n < 0 || n as usize > self.n_top() {
            FgModule::zero(self.b.ring().clone())
        } else {
            self.tot.sums[n as usize].module.clone()
        }
    }

    /// ∂: Tot_n -> Tot_{n-1} (zero map outside the range).
    fn boundary(&self, n: isize) -> ModuleMap {
        if n >= 1 && n as usize <= self.n_top() {
            self.tot.complex.boundary(n as usize)
        } else {
            self.tot_module(n).zero_map_to(&self.tot_module(n - 1))
        }
    }

    /// Lattice of F^p Tot_n: the coordinate blocks with s >= p.
    fn f_lattice(&self, n: isize, p: isize) -> Mat {
        if n < 0 || n as usize > self.n_top() {
            return Mat::zero(0, 0);
        }
        let n = n as usize;
        let total = self.tot.sums[n].module.ngens();
        let mut cols: Vec<Mat> = Vec::new();
        for (k, &(s, _t)) in self.tot.blocks[n].iter().enumerate() {
            if (s as isize) >= p {
                cols.push(self.tot.sums[n].injections[k].matrix().clone());
            }
        }
        if cols.is_empty() {
            Mat::zero(total, 0)
        } else {
            Mat::hstack(&cols.iter().collect::<Vec<_>>())
        }
    }

    /// Z-lattice {x in F^p Tot_n : ∂x in F^q Tot_{n-1}}, columns in Tot_n
    /// coordinates.
    fn zl(&self, n: isize, p: isize, q: isize) -> Mat {
        if n < 0 || n as usize > self.n_top() {
            return Mat::zero(0, 0);
        }
        let f = self.f_lattice(n, p);
        if f.cols() == 0 {
            return f;
        }
        let boundary = self.boundary(n);
        let target = self.f_lattice(n - 1, q);
        let rel = self.tot_module(n - 1).rel_lattice();
        let bf = boundary.matrix().mul(&f);
        let joint = Mat::hstack(&[&bf, &target, &rel]);
        let null = joint.nullspace();
        let ys = null.select_rows(&(0..f.cols()).collect::<Vec<_>>());
        f.mul(&ys)
    }

    fn entry(&self, r: usize, s: usize, t: usize) -> Entry {
        let n = (t - s) as isize;
        let si = s as isize;
        let ri = r as isize;
        let z = self.zl(n, si, si + ri);
        let d1 = self.zl(n, si + 1, si + ri);
        let pre = self.zl(n + 1, (si + 1 - ri).max(0), si);
        let d2 = self.boundary(n + 1).matrix().mul(&pre);
        let rel = self.tot_module(n).rel_lattice();
        let rel_solver = Mat::hstack(&[&d1, &d2, &rel]);
        // Quotient Z / (D + rel): relations on the z-coordinates.
        let joint = Mat::hstack(&[&z, &rel_solver]);
        let null = joint.nullspace();
        let zrel = null.select_rows(&(0..z.cols()).collect::<Vec<_>>());
        let canon = canonicalize(self.b.ring(), z.cols(), &zrel);
        Entry {
            s,
            t,
            module: canon.module,
            z,
            rel_solver,
            to_canon: canon.to_canon,
            from_canon: canon.from_canon,
        }
    }

    /// Coordinates of a Tot_n column in an entry's canonical module.
    fn coords(&self, e: &Entry, x: &Mat) -> Option<Mat> {
        let joint = Mat::hstack(&[&e.z, &e.rel_solver]);
        let sol = crate::exact::map::solve_matrix_mod(
            self.b.ring(),
            &joint,
            x,
            &Mat::zero(x.rows(), 0),
        )?;
        let c = sol.select_rows(&(0..e.z.cols()).collect::<Vec<_>>());
        Some(e.module.normalize_column(&e.to_canon.mul(&c)))
    }

    fn d_map(&self, from: &Entry, to: &Entry) -> ModuleMap {
        let n = (from.t - from.s) as isize;
        let boundary = self.boundary(n);
        let mut mat = Mat::zero(to.module.ngens(), from.module.ngens());
        for j in 0..from.module.ngens() {
            let lift = from.z.mul(&from.from_canon.col(j));
            let image = boundary.matrix().mul(&lift);
            let coords = self
                .coords(to, &image)
                .expect("d_r image lies in the target window");
            for i in 0..to.module.ngens() {
                mat.set(i, j, coords.at(i, 0).clone());
            }
        }
        ModuleMap::new(from.module.clone(), to.module.clone(), mat)
            .expect("d_r is additive and well defined")
    }
}

fn sector_entries(b: &Bicomplex) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for s in 0..=b.s_max() {
        for t in s..=b.t_max() {
            out.push((s, t));
        }
    }
    out
}

/// Reject entries outside the t >= s >= 0 sector.
fn check_sector(b: &Bicomplex) -> Result<(), Error> {
    for s in 0..=b.s_max() {
        for t in 0..=b.t_max() {
            if t < s && !b.entry(s, t).is_zero_module() {
                return Err(Error::InputRejected(format!(
                    "entry at (s={s}, t={t}) lies outside the t >= s sector"
                )));
            }
        }
    }
    Ok(())
}

/// Homotopy spectral sequence of the s-filtration of the total complex of a
/// sector bicomplex, by the standard approximation subquotients.
pub fn ss_pages_bicomplex(b: &Bicomplex, r_max: usize) -> Result<SsReport, Error> {
    if b.v_dir() != VerticalDir::Chain {
        return Err(Error::InputRejected(
            "the homotopy spectral sequence expects a homologically graded vertical direction"
                .into(),
        ));
    }
    check_sector(b)?;
    let filt = Filtration::new(b)?;
    // Differentials leave the s-range for r > s_max + 1, so the pages are
    // constant from there on.
    let r_stable = b.s_max() + 2;
    let r_top = r_max.max(r_stable);
    let coords = sector_entries(b);
    let mut pages: Vec<SpectralSequencePage> = Vec::new();
    for r in 1..=r_top {
        let mut entries = BTreeMap::new();
        let mut data: BTreeMap<(usize, usize), Entry> = BTreeMap::new();
        for &(s, t) in &coords {
            let e = filt.entry(r, s, t);
            entries.insert((s, t), e.module.clone());
            data.insert((s, t), e);
        }
        let mut differentials = BTreeMap::new();
        for &(s, t) in &coords {
            let from = &data[&(s, t)];
            let (s2, t2) = (s + r, t + r - 1);
            let d = match data.get(&(s2, t2)) {
                Some(to) if !to.module.is_zero_module() => filt.d_map(from, to),
                Some(to) => from.module.zero_map_to(&to.module),
                None => from
                    .module
                    .zero_map_to(&FgModule::zero(b.ring().clone())),
            };
            differentials.insert((s, t), d);
        }
        pages.push(SpectralSequencePage {
            r,
            entries,
            differentials,
        });
    }
    let e_inf = pages[r_stable - 1].clone();
    // First page from which everything is constant with zero differentials.
    let mut stabilized_at = r_stable;
    while stabilized_at > 1 {
        let prev = &pages[stabilized_at - 2];
        let same = prev
            .entries
            .iter()
            .all(|(k, m)| m.factors() == e_inf.entries[k].factors())
            && prev.differentials.values().all(|d| d.is_zero_map());
        if same {
            stabilized_at -= 1;
        } else {
            break;
        }
    }

    // Abutment: graded pieces of H_n(Tot) against the stable page.
    let mut abutment = Vec::new();
    for n in 0..=filt.n_top() {
        let h = filt.tot.complex.homology_module(n);
        let mut pieces = Vec::new();
        let mut graded_matches = true;
        let mut graded_factors: Vec<num::BigInt> = Vec::new();
        let boundaries = filt.boundary(n as isize + 1).matrix().clone();
        for s in 0..=b.s_max() {
            let t = n + s;
            if t > b.t_max() {
                continue;
            }
            // Cycle lattices in filtration p = s and p = s + 1.
            let c_p = filt.zl(n as isize, s as isize, b.s_max() as isize + 1);
            let c_p1 = filt.zl(n as isize, s as isize + 1, b.s_max() as isize + 1);
            let rel = filt.tot_module(n as isize).rel_lattice();
            let denom = Mat::hstack(&[&c_p1, &boundaries, &rel]);
            let joint = Mat::hstack(&[&c_p, &denom]);
            let null = joint.nullspace();
            let crel = null.select_rows(&(0..c_p.cols()).collect::<Vec<_>>());
            let canon = canonicalize(b.ring(), c_p.cols(), &crel);
            let gr = canon.module;
            let e = e_inf.entries[&(s, t)].clone();
            graded_matches &= gr.factors() == e.factors();
            graded_factors.extend(gr.factors().iter().cloned());
            pieces.push((s, t, e, gr));
        }
        // Does the associated graded reassemble H_n without extensions?
        let pres_cols = graded_factors.len();
        let mut pres = Mat::zero(pres_cols, pres_cols);
        for (i, f) in graded_factors.iter().enumerate() {
            pres.set(i, i, num::BigRational::from(f.clone()));
        }
        let sum_of_pieces = canonicalize(b.ring(), pres_cols, &pres).module;
        let extension_split = sum_of_pieces.factors() == h.factors();
        abutment.push(AbutmentDegree {
            n,
            h_tot: h,
            pieces,
            graded_matches,
            extension_split,
        });
    }
    pages.truncate(r_max.max(1));
    Ok(SsReport {
        pages,
        e_inf,
        stabilized_at,
        abutment,
    })
}

/// E_1 oracle: homology of the columns, compared entrywise.
pub fn column_homology(b: &Bicomplex) -> Result<Vec<Vec<FgModule>>, Error> {
    let mut out = Vec::new();
    for s in 0..=b.s_max() {
        let col = b.column_chain(s)?;
        out.push((0..=b.t_max()).map(|t| col.homology_module(t)).collect());
    }
    Ok(out)
}

/// E_2 oracle: homology of homology, rows of induced horizontal maps on the
/// column homologies.
pub fn homology_of_homology(b: &Bicomplex) -> Result<Vec<Vec<FgModule>>, Error> {
    let cols: Vec<ChainComplex> = (0..=b.s_max())
        .map(|s| b.column_chain(s))
        .collect::<Result<_, _>>()?;
    let mut rows: Vec<Vec<FgModule>> = vec![Vec::new(); b.s_max() + 1];
    for t in 0..=b.t_max() {
        // Induced maps H_t(col_s) -> H_t(col_{s+1}).
        let homs: Vec<crate::cosimplicial::complex::Homology> =
            cols.iter().map(|c| c.homology(t)).collect();
        let mut induced = Vec::new();
        for s in 0..b.s_max() {
            let into_cycles = corestrict(
                &homs[s].cycles.incl.then(&b.h_map(s, t)),
                &homs[s + 1].cycles,
            )
            .expect("horizontal maps preserve vertical cycles");
            induced.push(
                descend(&into_cycles, &homs[s].quot, &homs[s + 1].quot)
                    .expect("horizontal maps preserve vertical boundaries"),
            );
        }
        let row = CochainComplex::new(
            b.ring().clone(),
            homs.iter().map(|h| h.module.clone()).collect(),
            induced,
        )?;
        for (s, slot) in rows.iter_mut().enumerate() {
            slot.push(row.homology_module(s));
        }
    }
    Ok(rows)
}

/// The cosimplicial tower of levelwise homotopy π_t(X^{m,•}) of a
/// cosimplicial-simplicial module, with the induced horizontal structure.
pub fn levelwise_homotopy_tower(x: &Bitower, t: usize) -> Result<Tower, Error> {
    if x.v_orient() != Orientation::Simplicial {
        return Err(Error::OrientationMismatch(
            "levelwise homotopy needs a simplicial vertical direction".into(),
        ));
    }
    if t + 1 > x.v_max() {
        return Err(Error::DegreeOutOfRange {
            requested: t as isize,
            max: x.v_max() as isize - 1,
        });
    }
    // Moore chain complex of each column, then its homology at degree t.
    let moore = |m: usize| -> Result<ChainComplex, Error> {
        let terms: Vec<FgModule> = (0..=x.v_max()).map(|n| x.level(m, n).clone()).collect();
        let mut boundaries = Vec::new();
        for n in 1..=x.v_max() {
            let mut acc = x.level(m, n).zero_map_to(x.level(m, n - 1));
            for i in 0..=n {
                let f = x.v_face(m, n, i);
                acc = if i % 2 == 0 { acc.add(&f) } else { acc.sub(&f) };
            }
            boundaries.push(acc);
        }
        ChainComplex::new(x.ring().clone(), terms, boundaries)
    };
    let complexes: Vec<ChainComplex> = (0..=x.h_max()).map(moore).collect::<Result<_, _>>()?;
    let homs: Vec<crate::cosimplicial::complex::Homology> =
        complexes.iter().map(|c| c.homology(t)).collect();
    let levels: Vec<FgModule> = homs.iter().map(|h| h.module.clone()).collect();
    let induce = |m_from: usize, m_to: usize, f: &ModuleMap| -> ModuleMap {
        let into_cycles = corestrict(&homs[m_from].cycles.incl.then(f), &homs[m_to].cycles)
            .expect("structure maps preserve cycles");
        descend(&into_cycles, &homs[m_from].quot, &homs[m_to].quot)
            .expect("structure maps preserve boundaries")
    };
    let mut up = Vec::new();
    let mut down = Vec::new();
    for m in 0..x.h_max() {
        let cofaces: Vec<ModuleMap> = (0..=m + 1)
            .map(|i| induce(m, m + 1, x.h_coface(m, t, i)))
            .collect();
        let codegens: Vec<ModuleMap> = (0..=m)
            .map(|j| induce(m + 1, m, x.h_codegeneracy(m, t, j)))
            .collect();
        up.push(cofaces);
        down.push(codegens);
    }
    Tower::new(
        x.ring().clone(),
        Orientation::Cosimplicial,
        levels,
        up,
        down,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ring::BaseRing;
    use num::BigInt;

    fn two_entry_example() -> Bicomplex {
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
        Bicomplex::new(ring, VerticalDir::Chain, entries, h, v).unwrap()
    }

    #[test]
    fn two_entry_pages() {
        let b = two_entry_example();
        let rep = ss_pages_bicomplex(&b, 3).unwrap();
        let p1 = &rep.pages[0];
        assert_eq!(p1.entries[&(0, 1)].factors(), &[BigInt::from(0)]);
        assert_eq!(p1.entries[&(1, 1)].factors(), &[BigInt::from(0)]);
        // d_1 is multiplication by 2.
        let d = &p1.differentials[&(0, 1)];
        assert_eq!(d.matrix().at(0, 0).to_integer(), BigInt::from(2));
        let p2 = &rep.pages[1];
        assert!(p2.entries[&(0, 1)].is_zero_module());
        assert_eq!(p2.entries[&(1, 1)].factors(), &[BigInt::from(2)]);
        // E_inf reconstructs H(Tot).
        for a in &rep.abutment {
            assert!(a.graded_matches, "degree {}: graded pieces differ", a.n);
            assert!(a.extension_split);
        }
        assert_eq!(rep.abutment[0].h_tot.factors(), &[BigInt::from(2)]);
    }

    #[test]
    fn zero_columns_give_zero_pages() {
        let ring = BaseRing::Int;
        let zero = FgModule::zero(ring.clone());
        let entries = vec![vec![zero.clone(), zero.clone()]];
        let b = Bicomplex::new(
            ring,
            VerticalDir::Chain,
            entries,
            vec![],
            vec![vec![zero.zero_map_to(&zero)]],
        )
        .unwrap();
        let rep = ss_pages_bicomplex(&b, 2).unwrap();
        assert!(rep.pages[0].entries.values().all(|m| m.is_zero_module()));
        assert_eq!(rep.stabilized_at, 1);
    }

    #[test]
    fn page_one_and_two_match_oracles() {
        let b = two_entry_example();
        let rep = ss_pages_bicomplex(&b, 3).unwrap();
        let e1 = column_homology(&b).unwrap();
        for (&(s, t), m) in &rep.pages[0].entries {
            assert_eq!(m.factors(), e1[s][t].factors(), "E_1 at ({s},{t})");
        }
        let e2 = homology_of_homology(&b).unwrap();
        for (&(s, t), m) in &rep.pages[1].entries {
            assert_eq!(m.factors(), e2[s][t].factors(), "E_2 at ({s},{t})");
        }
    }

    #[test]
    fn nonsector_input_rejected() {
        let ring = BaseRing::Int;
        let z = FgModule::free(ring.clone(), 1);
        let zero = FgModule::zero(ring.clone());
        // A nonzero entry at (1, 0): outside the sector.
        let entries = vec![vec![zero.clone(), zero.clone()], vec![z.clone(), zero.clone()]];
        let h = vec![vec![zero.zero_map_to(&z), zero.zero_map_to(&zero)]];
        let v = vec![vec![zero.zero_map_to(&zero)], vec![zero.zero_map_to(&z)]];
        let b = Bicomplex::new(ring, VerticalDir::Chain, entries, h, v).unwrap();
        assert!(matches!(
            ss_pages_bicomplex(&b, 2),
            Err(Error::InputRejected(_))
        ));
    }

    use crate::exact::map::ModuleMap;
    use crate::exact::matrix::Mat;
}
