use crate::error::Error;
use num::bigint::Sign;
use num::{BigInt, BigRational, One, Zero};
use std::fmt;

/// Dense matrix with exact rational entries, row major. Matrices over ℤ,
/// ℤ/m and 𝔽_p keep denominator 1 throughout; only computations over ℚ
/// produce genuine fractions.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut m = Mat::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Build from integer rows; each row must have the same length.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Mat::from_fn(r, c, |i, j| BigRational::from(BigInt::from(rows[i][j])))
    }

    pub fn from_bigint_entries(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        Mat {
            rows,
            cols,
            data: entries.into_iter().map(BigRational::from).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j).clone();
                    out.set(i, j, cur + a * b);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + other.at(i, j))
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) - other.at(i, j))
    }

    pub fn neg(&self) -> Mat {
        Mat::from_fn(self.rows, self.cols, |i, j| -self.at(i, j).clone())
    }

    pub fn scale(&self, c: &BigRational) -> Mat {
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) * c)
    }

    /// Horizontal concatenation; all blocks must share the row count.
    pub fn hstack(blocks: &[&Mat]) -> Mat {
        let rows = blocks.first().map_or(0, |b| b.rows);
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zero(rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "row count mismatch in hstack");
            for i in 0..rows {
                for j in 0..b.cols {
                    out.set(i, off + j, b.at(i, j).clone());
                }
            }
            off += b.cols;
        }
        out
    }

    pub fn vstack(blocks: &[&Mat]) -> Mat {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Mat::zero(rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "column count mismatch in vstack");
            for i in 0..b.rows {
                for j in 0..cols {
                    out.set(off + i, j, b.at(i, j).clone());
                }
            }
            off += b.rows;
        }
        out
    }

    pub fn block_diag(blocks: &[&Mat]) -> Mat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zero(rows, cols);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(ro + i, co + j, b.at(i, j).clone());
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(idx.len(), self.cols, |i, j| self.at(idx[i], j).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.rows, idx.len(), |i, j| self.at(i, idx[j]).clone())
    }

    pub fn col(&self, j: usize) -> Mat {
        self.select_cols(&[j])
    }

    /// Kronecker product, `(self ⊗ other)[(i,k),(j,l)] = self[i,j] * other[k,l]`.
    pub fn kronecker(&self, other: &Mat) -> Mat {
        let mut out = Mat::zero(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.at(k, l));
                    }
                }
            }
        }
        out
    }

    /// Stack columns into a single column vector (column-major vectorization).
    pub fn vec_cols(&self) -> Mat {
        let mut out = Mat::zero(self.rows * self.cols, 1);
        for j in 0..self.cols {
            for i in 0..self.rows {
                out.set(j * self.rows + i, 0, self.at(i, j).clone());
            }
        }
        out
    }

    /// Inverse of [`Mat::vec_cols`].
    pub fn unvec_cols(v: &Mat, rows: usize, cols: usize) -> Mat {
        assert_eq!(v.rows(), rows * cols);
        Mat::from_fn(rows, cols, |i, j| v.at(j * rows + i, 0).clone())
    }

    /// Entries as integers; `None` if any entry has a denominator.
    pub fn to_bigint_entries(&self) -> Option<Vec<BigInt>> {
        self.data
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect()
    }

    /// Clear denominators row by row: returns an integer matrix with the same
    /// nullspace and row-by-row scaled rows (row i multiplied by `scales[i]`).
    pub fn scaled_integral_rows(&self) -> (Mat, Vec<BigInt>) {
        let mut out = self.clone();
        let mut scales = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut l = BigInt::one();
            for j in 0..self.cols {
                let den = self.at(i, j).denom().clone();
                l = num::integer::lcm(l, den);
            }
            let lr = BigRational::from(l.clone());
            for j in 0..self.cols {
                let v = self.at(i, j) * &lr;
                out.set(i, j, v);
            }
            scales.push(l);
        }
        (out, scales)
    }

    /// Rank over ℚ.
    pub fn rank(&self) -> usize {
        let (scaled, _) = self.scaled_integral_rows();
        let snf = scaled.snf().expect("scaled matrix is integral");
        snf.diag().iter().filter(|d| !d.is_zero()).count()
    }

    /// Smith normal form with all four transforms. Requires integer entries.
    pub fn snf(&self) -> Result<Snf, Error> {
        let entries = self.to_bigint_entries().ok_or_else(|| Error::BadStructure(
            "Smith normal form requires integer entries".into(),
        ))?;
        Ok(snf_bigint(self.rows, self.cols, entries))
    }

    /// Integer lattice basis of `{x : self * x = 0}` as matrix columns.
    /// Rational entries are allowed; rows are cleared of denominators first.
    pub fn nullspace(&self) -> Mat {
        let (scaled, _) = self.scaled_integral_rows();
        let snf = scaled.snf().expect("scaled matrix is integral");
        let d = snf.diag();
        let null_idx: Vec<usize> = (0..self.cols)
            .filter(|&j| j >= d.len() || d[j].is_zero())
            .collect();
        snf.v.select_cols(&null_idx)
    }

    /// Integer solutions of `self * X = B`; both must be integral.
    pub fn solve_int(&self, b: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, b.rows, "rhs row mismatch");
        assert!(self.is_integral() && b.is_integral(), "solve_int needs integer data");
        let snf = self.snf().expect("integral");
        let d = snf.diag();
        let ub = snf.u.mul(b);
        let mut z = Mat::zero(self.cols, b.cols);
        for i in 0..self.rows {
            for j in 0..b.cols {
                let val = ub.at(i, j);
                if i < d.len() && !d[i].is_zero() {
                    let di = BigRational::from(d[i].clone());
                    let q = val / &di;
                    if !q.is_integer() {
                        return None;
                    }
                    z.set(i, j, q);
                } else if !val.is_zero() {
                    return None;
                }
            }
        }
        Some(snf.v.mul(&z))
    }

    /// Rational solutions of `self * X = B`.
    pub fn solve_rat(&self, b: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, b.rows, "rhs row mismatch");
        let joint = Mat::hstack(&[self, b]);
        let (scaled, _) = joint.scaled_integral_rows();
        let a2 = scaled.select_cols(&(0..self.cols).collect::<Vec<_>>());
        let b2 = scaled.select_cols(&(self.cols..self.cols + b.cols).collect::<Vec<_>>());
        let snf = a2.snf().expect("integral");
        let d = snf.diag();
        let ub = snf.u.mul(&b2);
        let mut z = Mat::zero(self.cols, b.cols);
        for i in 0..self.rows {
            for j in 0..b.cols {
                let val = ub.at(i, j);
                if i < d.len() && !d[i].is_zero() {
                    z.set(i, j, val / BigRational::from(d[i].clone()));
                } else if !val.is_zero() {
                    return None;
                }
            }
        }
        Some(snf.v.mul(&z))
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self.at(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Smith normal form `u * a * v = d` with tracked inverses of both
/// transforms. The diagonal satisfies `d_i | d_{i+1}` with nonnegative
/// entries, zeros last.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: Mat,
    pub u_inv: Mat,
    pub d: Mat,
    pub v: Mat,
    pub v_inv: Mat,
}

impl Snf {
    pub fn diag(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.at(i, i).to_integer()).collect()
    }
}

/// Round-to-nearest division; the remainder satisfies `|a - q b| <= |b| / 2`.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = num::Integer::div_rem(a, b);
    if r.magnitude() * 2u32 > *b.magnitude() {
        if r.sign() == b.sign() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

struct SnfState {
    rows: usize,
    cols: usize,
    d: Vec<BigInt>,
    u: Vec<BigInt>,
    u_inv: Vec<BigInt>,
    v: Vec<BigInt>,
    v_inv: Vec<BigInt>,
}

impl SnfState {
    fn d(&self, i: usize, j: usize) -> &BigInt {
        &self.d[i * self.cols + j]
    }

    fn row_swap(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        for j in 0..self.cols {
            self.d.swap(i * self.cols + j, k * self.cols + j);
        }
        for j in 0..self.rows {
            self.u.swap(i * self.rows + j, k * self.rows + j);
            // inverse picks up the swap on columns
            self.u_inv.swap(j * self.rows + i, j * self.rows + k);
        }
    }

    fn col_swap(&mut self, j: usize, l: usize) {
        if j == l {
            return;
        }
        for i in 0..self.rows {
            self.d.swap(i * self.cols + j, i * self.cols + l);
        }
        for i in 0..self.cols {
            self.v.swap(i * self.cols + j, i * self.cols + l);
            self.v_inv.swap(j * self.cols + i, l * self.cols + i);
        }
    }

    /// row_i += q * row_k
    fn row_addmul(&mut self, i: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let add = q * &self.d[k * self.cols + j];
            self.d[i * self.cols + j] += add;
        }
        for j in 0..self.rows {
            let add = q * &self.u[k * self.rows + j];
            self.u[i * self.rows + j] += add;
            // u_inv: col_k -= q * col_i
            let sub = q * &self.u_inv[j * self.rows + i];
            self.u_inv[j * self.rows + k] -= sub;
        }
    }

    /// col_j += q * col_l
    fn col_addmul(&mut self, j: usize, l: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let add = q * &self.d[i * self.cols + l];
            self.d[i * self.cols + j] += add;
        }
        for i in 0..self.cols {
            let add = q * &self.v[i * self.cols + l];
            self.v[i * self.cols + j] += add;
            // v_inv: row_l -= q * row_j
            let sub = q * &self.v_inv[j * self.cols + i];
            self.v_inv[l * self.cols + i] -= sub;
        }
    }

    fn row_negate(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = -self.d[i * self.cols + j].clone();
            self.d[i * self.cols + j] = x;
        }
        for j in 0..self.rows {
            let x = -self.u[i * self.rows + j].clone();
            self.u[i * self.rows + j] = x;
            let y = -self.u_inv[j * self.rows + i].clone();
            self.u_inv[j * self.rows + i] = y;
        }
    }

    /// Smallest nonzero entry by absolute value in the trailing submatrix.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = self.d(i, j);
                if x.is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if x.magnitude() < self.d(bi, bj).magnitude() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        best
    }
}

fn snf_bigint(rows: usize, cols: usize, entries: Vec<BigInt>) -> Snf {
    let ident = |n: usize| -> Vec<BigInt> {
        let mut m = vec![BigInt::zero(); n * n];
        for i in 0..n {
            m[i * n + i] = BigInt::one();
        }
        m
    };
    let mut st = SnfState {
        rows,
        cols,
        d: entries,
        u: ident(rows),
        u_inv: ident(rows),
        v: ident(cols),
        v_inv: ident(cols),
    };

    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = st.min_pivot(t) else { break };
        st.row_swap(t, pi);
        st.col_swap(t, pj);
        loop {
            // Shrink the pivot column, re-pivoting on any nonzero remainder.
            let mut dirty = false;
            for i in t + 1..rows {
                if st.d(i, t).is_zero() {
                    continue;
                }
                let q = -round_div(st.d(i, t), st.d(t, t));
                st.row_addmul(i, t, &q);
                if !st.d(i, t).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let (pi, pj) = st.min_pivot(t).expect("nonzero remainder exists");
                st.row_swap(t, pi);
                st.col_swap(t, pj);
                continue;
            }
            for j in t + 1..cols {
                if st.d(t, j).is_zero() {
                    continue;
                }
                let q = -round_div(st.d(t, j), st.d(t, t));
                st.col_addmul(j, t, &q);
                if !st.d(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let (pi, pj) = st.min_pivot(t).expect("nonzero remainder exists");
                st.row_swap(t, pi);
                st.col_swap(t, pj);
                continue;
            }
            // Pivot must divide the trailing submatrix for the divisor chain.
            let mut offender = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(st.d(i, j) % st.d(t, t)).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    st.row_addmul(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if st.d(t, t).sign() == Sign::Minus {
            st.row_negate(t);
        }
        t += 1;
    }

    Snf {
        u: Mat::from_bigint_entries(rows, rows, st.u),
        u_inv: Mat::from_bigint_entries(rows, rows, st.u_inv),
        d: Mat::from_bigint_entries(rows, cols, st.d),
        v: Mat::from_bigint_entries(cols, cols, st.v),
        v_inv: Mat::from_bigint_entries(cols, cols, st.v_inv),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check_snf(a: &Mat) {
        let s = a.snf().unwrap();
        // u * a * v = d, and the tracked inverses really invert.
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), Mat::identity(a.rows()));
        assert_eq!(s.v.mul(&s.v_inv), Mat::identity(a.cols()));
        let d = s.diag();
        for w in d.windows(2) {
            if w[0].is_zero() {
                assert!(w[1].is_zero(), "zeros must come last");
            } else {
                assert!((&w[1] % &w[0]).is_zero(), "divisor chain violated: {d:?}");
            }
        }
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.at(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn snf_identity() {
        let a = Mat::identity(2);
        let s = a.snf().unwrap();
        assert_eq!(s.diag(), vec![BigInt::from(1), BigInt::from(1)]);
        check_snf(&a);
    }

    #[test]
    fn snf_known_2x2() {
        // Independent oracle: |det| = 8 = 2 * 4 and gcd of entries is 2.
        let a = Mat::from_int_rows(&[vec![2, 4], vec![6, 8]]);
        let s = a.snf().unwrap();
        assert_eq!(s.diag(), vec![BigInt::from(2), BigInt::from(4)]);
        check_snf(&a);
    }

    #[test]
    fn snf_zero_matrix() {
        let a = Mat::from_int_rows(&[vec![0]]);
        let s = a.snf().unwrap();
        assert_eq!(s.diag(), vec![BigInt::from(0)]);
        check_snf(&a);
    }

    #[test]
    fn snf_rectangular_and_empty() {
        check_snf(&Mat::from_int_rows(&[vec![2, 0, 4], vec![0, 6, 6]]));
        check_snf(&Mat::zero(0, 3));
        check_snf(&Mat::zero(3, 0));
        check_snf(&Mat::zero(0, 0));
    }

    #[test]
    fn snf_textbook_4x4() {
        let a = Mat::from_int_rows(&[
            vec![-6, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ]);
        let s = a.snf().unwrap();
        assert_eq!(
            s.diag(),
            vec![BigInt::from(1), BigInt::from(3), BigInt::from(21), BigInt::from(0)]
        );
        check_snf(&a);
    }

    #[test]
    fn nullspace_of_projection() {
        let a = Mat::from_int_rows(&[vec![1, 0, 0], vec![0, 1, 0]]);
        let n = a.nullspace();
        assert_eq!(n.cols(), 1);
        assert!(a.mul(&n).is_zero());
    }

    #[test]
    fn solve_int_divisibility() {
        let a = Mat::from_int_rows(&[vec![2]]);
        assert!(a.solve_int(&Mat::from_int_rows(&[vec![3]])).is_none());
        let x = a.solve_int(&Mat::from_int_rows(&[vec![6]])).unwrap();
        assert_eq!(a.mul(&x), Mat::from_int_rows(&[vec![6]]));
    }

    #[test]
    fn solve_rat_allows_fractions() {
        let a = Mat::from_int_rows(&[vec![2]]);
        let x = a.solve_rat(&Mat::from_int_rows(&[vec![3]])).unwrap();
        assert_eq!(a.mul(&x), Mat::from_int_rows(&[vec![3]]));
    }

    #[test]
    fn rank_of_rational_matrix() {
        let mut a = Mat::zero(2, 2);
        a.set(0, 0, BigRational::new(BigInt::from(1), BigInt::from(2)));
        a.set(1, 1, BigRational::from(BigInt::from(3)));
        assert_eq!(a.rank(), 2);
    }

    proptest! {
        #[test]
        fn snf_random(entries in proptest::collection::vec(-30i64..30, 12)) {
            let a = Mat::from_int_rows(&[
                entries[0..4].to_vec(),
                entries[4..8].to_vec(),
                entries[8..12].to_vec(),
            ]);
            check_snf(&a);
        }

        #[test]
        fn nullspace_random(entries in proptest::collection::vec(-9i64..9, 6)) {
            let a = Mat::from_int_rows(&[entries[0..3].to_vec(), entries[3..6].to_vec()]);
            let n = a.nullspace();
            prop_assert!(a.mul(&n).is_zero());
            prop_assert_eq!(n.cols() + a.rank(), 3);
        }
    }
}
