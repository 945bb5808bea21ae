//! Monotone maps of finite ordinals [n] = {0, ..., n} and their epi-mono
//! factorizations, the combinatorial substrate of latching/matching objects
//! and the Dold–Kan correspondence.

/// A monotone map [dom] -> [cod]; `vals[i]` is the image of i.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonotoneMap {
    pub dom: usize,
    pub cod: usize,
    pub vals: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(dom: usize, cod: usize, vals: Vec<usize>) -> Self {
        assert_eq!(vals.len(), dom + 1);
        assert!(vals.windows(2).all(|w| w[0] <= w[1]), "must be monotone");
        assert!(vals.iter().all(|&v| v <= cod), "values out of range");
        MonotoneMap { dom, cod, vals }
    }

    pub fn identity(n: usize) -> Self {
        MonotoneMap::new(n, n, (0..=n).collect())
    }

    /// The coface δ^i: [n-1] -> [n] skipping i.
    pub fn coface(n: usize, i: usize) -> Self {
        assert!(n >= 1 && i <= n);
        MonotoneMap::new(n - 1, n, (0..n).map(|k| if k < i { k } else { k + 1 }).collect())
    }

    /// The codegeneracy σ^j: [n+1] -> [n] repeating j.
    pub fn codegeneracy(n: usize, j: usize) -> Self {
        assert!(j <= n);
        MonotoneMap::new(n + 1, n, (0..=n + 1).map(|k| if k <= j { k } else { k - 1 }).collect())
    }

    /// self followed by other.
    pub fn then(&self, other: &MonotoneMap) -> MonotoneMap {
        assert_eq!(self.cod, other.dom);
        MonotoneMap::new(
            self.dom,
            other.cod,
            self.vals.iter().map(|&v| other.vals[v]).collect(),
        )
    }

    pub fn is_injective(&self) -> bool {
        self.vals.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod + 1];
        for &v in &self.vals {
            seen[v] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.vals.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Unique factorization into a surjection followed by an injection.
    pub fn epi_mono(&self) -> (MonotoneMap, MonotoneMap) {
        let mut image: Vec<usize> = self.vals.clone();
        image.dedup();
        let k = image.len() - 1;
        let epi_vals: Vec<usize> = self
            .vals
            .iter()
            .map(|v| image.iter().position(|w| w == v).unwrap())
            .collect();
        let epi = MonotoneMap::new(self.dom, k, epi_vals);
        let mono = MonotoneMap::new(k, self.cod, image);
        debug_assert_eq!(epi.then(&mono), *self);
        (epi, mono)
    }

    /// Decompose an injection into basic cofaces, outermost last: the list
    /// `[i1, i2, ...]` means self = δ^{i1} ∘ δ^{i2} ∘ ... read right to left
    /// as composition towards the codomain.
    pub fn coface_indices(&self) -> Vec<usize> {
        assert!(self.is_injective());
        let mut missing: Vec<usize> = (0..=self.cod)
            .filter(|v| !self.vals.contains(v))
            .collect();
        // Peel the largest missing value first: δ^m : [cod-1] -> [cod].
        missing.sort_unstable();
        missing.reverse();
        missing
    }

    /// Decompose a surjection into basic codegeneracies: the list
    /// `[j1, j2, ...]` means self = σ^{jk} ∘ ... ∘ σ^{j1} applied from the
    /// domain side (j1 first).
    pub fn codegeneracy_indices(&self) -> Vec<usize> {
        assert!(self.is_surjective());
        let mut out = Vec::new();
        let mut cur = self.clone();
        while cur.dom > cur.cod {
            let j = (0..cur.dom)
                .find(|&j| cur.vals[j] == cur.vals[j + 1])
                .expect("non-injective map repeats a value");
            // cur = cur' ∘ σ^j with cur' dropping index j+1.
            let mut vals = cur.vals.clone();
            vals.remove(j + 1);
            out.push(j);
            cur = MonotoneMap::new(cur.dom - 1, cur.cod, vals);
        }
        debug_assert!(cur.is_identity());
        out
    }
}

/// All monotone injections [k] -> [n] for a fixed k, in lexicographic order.
pub fn injections(k: usize, n: usize) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    let mut pick = vec![0usize; k + 1];
    fn rec(pick: &mut Vec<usize>, pos: usize, lo: usize, n: usize, out: &mut Vec<MonotoneMap>) {
        if pos == pick.len() {
            out.push(MonotoneMap::new(pick.len() - 1, n, pick.clone()));
            return;
        }
        for v in lo..=n {
            pick[pos] = v;
            rec(pick, pos + 1, v + 1, n, out);
        }
    }
    if k <= n {
        rec(&mut pick, 0, 0, n, &mut out);
    }
    out
}

/// All monotone surjections [n] -> [k] for a fixed k, in lexicographic order.
pub fn surjections(n: usize, k: usize) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut vals = vec![0usize; n + 1];
    fn rec(vals: &mut Vec<usize>, pos: usize, prev: usize, n: usize, k: usize, out: &mut Vec<MonotoneMap>) {
        if pos == n + 1 {
            if prev == k {
                out.push(MonotoneMap::new(n, k, vals.clone()));
            }
            return;
        }
        // Monotone and surjective: each step stays or advances by one, and
        // the remaining steps must be able to reach k.
        for v in prev..=(prev + 1).min(k) {
            if k - v <= n - pos {
                vals[pos] = v;
                rec(vals, pos + 1, v, n, k, out);
            }
        }
    }
    vals[0] = 0;
    rec(&mut vals, 1, 0, n, k, &mut out);
    out
}
