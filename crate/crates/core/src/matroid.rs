//! Matroids and integer polymatroids on the canonical ground set `0..n-1`.
//!
//! Every matroid carries a dense rank table of all `2^n` subset ranks,
//! filled eagerly at construction. Instances are immutable afterwards and
//! freely shareable across threads.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::subset;

/// Hard cap on the ground-set size; the dense rank table has `2^n` entries.
pub const MAX_ELEMENTS: usize = 24;

/// The canonical ground set `0..n-1`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GroundSet {
    n: usize,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<GroundSet> {
        if n > MAX_ELEMENTS {
            return Err(Error::InvalidParameters(format!(
                "ground set of size {n} exceeds the supported maximum {MAX_ELEMENTS}"
            )));
        }
        Ok(GroundSet { n })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.n
    }

    /// The whole ground set as a mask.
    pub fn full_mask(&self) -> u64 {
        subset::full(self.n)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MatroidKind {
    Matroid,
    Polymatroid,
}

/// A (poly)matroid: ground set plus a rank function on all subsets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matroid {
    ground: GroundSet,
    kind: MatroidKind,
    rank_m: u32,
    table: Vec<u32>,
}

impl Matroid {
    /// Build from an arbitrary rank function. The function is evaluated on
    /// every subset; monotonicity/submodularity are the caller's contract
    /// (the public constructors either guarantee or validate them).
    fn from_rank_fn(n: usize, f: impl Fn(u64) -> u32) -> Result<Matroid> {
        let ground = GroundSet::new(n)?;
        let size = 1usize << n;
        let mut table = Vec::with_capacity(size);
        for mask in 0..size as u64 {
            table.push(f(mask));
        }
        let rank_m = table[size - 1];
        let kind = if (0..n).all(|e| table[1 << e] <= 1) {
            MatroidKind::Matroid
        } else {
            MatroidKind::Polymatroid
        };
        Ok(Matroid { ground, kind, rank_m, table })
    }

    /// The uniform matroid `U_{r,n}` with `rk(S) = min(|S|, r)`.
    pub fn uniform(r: usize, n: usize) -> Result<Matroid> {
        if r > n {
            return Err(Error::InvalidParameters(format!(
                "uniform matroid needs r <= n, got r={r}, n={n}"
            )));
        }
        Matroid::from_rank_fn(n, |mask| (subset::card(mask) as usize).min(r) as u32)
    }

    /// The cycle matroid of an undirected multigraph. Ground set elements
    /// are the edge indices; a graph loop is a matroid loop.
    pub fn graphic(n_vertices: usize, edges: &[(usize, usize)]) -> Result<Matroid> {
        for &(a, b) in edges {
            if a >= n_vertices || b >= n_vertices {
                return Err(Error::InvalidParameters(format!(
                    "edge ({a},{b}) has a vertex outside 0..{n_vertices}"
                )));
            }
        }
        let edges = edges.to_vec();
        Matroid::from_rank_fn(edges.len(), |mask| {
            // |S| minus the number of independent cycles, via union-find.
            let mut parent: Vec<usize> = (0..n_vertices).collect();
            fn find(parent: &mut [usize], mut i: usize) -> usize {
                while parent[i] != i {
                    parent[i] = parent[parent[i]];
                    i = parent[i];
                }
                i
            }
            let mut rank = 0u32;
            let mut m = mask;
            while m != 0 {
                let e = m.trailing_zeros() as usize;
                m &= m - 1;
                let (a, b) = edges[e];
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                    rank += 1;
                }
            }
            rank
        })
    }

    /// Build from an explicit list of bases; validates the exchange axiom.
    pub fn from_bases(n: usize, bases: &[Vec<usize>]) -> Result<Matroid> {
        if bases.is_empty() {
            return Err(Error::InvalidParameters("empty basis list".into()));
        }
        let mut masks: Vec<u64> = Vec::with_capacity(bases.len());
        for basis in bases {
            for &e in basis {
                if e >= n {
                    return Err(Error::ElementOutOfRange { element: e, n });
                }
            }
            let mask = subset::mask_of(basis);
            if subset::card(mask) as usize != basis.len() {
                return Err(Error::InvalidParameters(format!(
                    "basis {basis:?} has repeated elements"
                )));
            }
            masks.push(mask);
        }
        masks.sort_unstable();
        masks.dedup();
        let r = subset::card(masks[0]);
        if masks.iter().any(|&b| subset::card(b) != r) {
            return Err(Error::NotAMatroid("bases are not equicardinal".into()));
        }
        // Exchange axiom: for B1, B2 and x in B1-B2 there is y in B2-B1 with
        // B1 - x + y a basis.
        for &b1 in &masks {
            for &b2 in &masks {
                if b1 == b2 {
                    continue;
                }
                let mut moving = b1 & !b2;
                while moving != 0 {
                    let x = moving.trailing_zeros() as usize;
                    moving &= moving - 1;
                    let mut candidates = b2 & !b1;
                    let mut found = false;
                    while candidates != 0 {
                        let y = candidates.trailing_zeros() as usize;
                        candidates &= candidates - 1;
                        let swapped = (b1 & !(1u64 << x)) | (1u64 << y);
                        if masks.binary_search(&swapped).is_ok() {
                            found = true;
                            break;
                        }
                    }
                    if !found {
                        return Err(Error::NotAMatroid(format!(
                            "exchange fails for bases {} and {} at element {x}",
                            subset::format_set(b1),
                            subset::format_set(b2)
                        )));
                    }
                }
            }
        }
        Matroid::from_rank_fn(n, |mask| {
            masks.iter().map(|&b| subset::card(mask & b)).max().unwrap()
        })
    }

    /// Build from a full rank table indexed by bitmask; validates all four
    /// axioms and reports the first violating pair.
    pub fn from_rank_table(n: usize, table: &[u32]) -> Result<Matroid> {
        let _ = GroundSet::new(n)?;
        if table.len() != (1usize << n) {
            return Err(Error::InvalidParameters(format!(
                "rank table has {} entries, expected {}",
                table.len(),
                1usize << n
            )));
        }
        validate_rank_axioms(n, table)?;
        let table = table.to_vec();
        Matroid::from_rank_fn(n, |mask| table[mask as usize])
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.n
    }

    pub fn kind(&self) -> MatroidKind {
        self.kind
    }

    pub fn is_polymatroid(&self) -> bool {
        self.kind == MatroidKind::Polymatroid
    }

    /// Rank of the whole ground set.
    pub fn rank_m(&self) -> u32 {
        self.rank_m
    }

    /// Corank `rk(M) - rk(S)`.
    pub fn corank(&self, mask: u64) -> Result<u32> {
        Ok(self.rank_m - self.rank(mask)?)
    }

    /// Memoized rank lookup.
    pub fn rank(&self, mask: u64) -> Result<u32> {
        if mask & !self.ground.full_mask() != 0 {
            return Err(Error::OutOfRange { mask, n: self.ground.n });
        }
        Ok(self.table[mask as usize])
    }

    #[inline]
    pub(crate) fn rank_unchecked(&self, mask: u64) -> u32 {
        self.table[mask as usize]
    }

    pub fn rank_table(&self) -> &[u32] {
        &self.table
    }

    /// Rank-table equality on the shared canonical labels.
    pub fn same_rank_table(&self, other: &Matroid) -> bool {
        self.ground.n == other.ground.n && self.table == other.table
    }

    /// Smallest flat containing `mask`.
    pub fn closure(&self, mask: u64) -> Result<u64> {
        let r = self.rank(mask)?;
        let mut cl = mask;
        for e in self.ground.elements() {
            if cl & (1 << e) == 0 && self.rank_unchecked(mask | (1 << e)) == r {
                cl |= 1 << e;
            }
        }
        Ok(cl)
    }

    pub fn is_loop(&self, e: usize) -> Result<bool> {
        self.check_element(e)?;
        Ok(self.rank_unchecked(1 << e) == 0)
    }

    pub fn is_coloop(&self, e: usize) -> Result<bool> {
        self.check_element(e)?;
        let rest = self.ground.full_mask() & !(1 << e);
        Ok(self.rank_unchecked(rest) + 1 == self.rank_m)
    }

    /// No loops and no two parallel elements.
    pub fn is_simple(&self) -> bool {
        for e in self.ground.elements() {
            if self.rank_unchecked(1 << e) == 0 {
                return false;
            }
        }
        for a in self.ground.elements() {
            for b in (a + 1)..self.ground.n {
                if self.rank_unchecked((1 << a) | (1 << b)) == 1 {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_loopless(&self) -> bool {
        self.ground.elements().all(|e| self.rank_unchecked(1 << e) > 0)
    }

    fn check_element(&self, e: usize) -> Result<()> {
        if e >= self.ground.n {
            return Err(Error::ElementOutOfRange { element: e, n: self.ground.n });
        }
        Ok(())
    }

    fn check_subset(&self, mask: u64) -> Result<()> {
        if mask & !self.ground.full_mask() != 0 {
            return Err(Error::OutOfRange { mask, n: self.ground.n });
        }
        Ok(())
    }

    /// Dual matroid, `rk*(X) = |X| - rk(M) + rk(A - X)`.
    pub fn dual(&self) -> Result<Matroid> {
        if self.is_polymatroid() {
            return Err(Error::PolymatroidUnsupported("dual"));
        }
        let full = self.ground.full_mask();
        Matroid::from_rank_fn(self.ground.n, |mask| {
            subset::card(mask) + self.rank_unchecked(full & !mask) - self.rank_m
        })
    }

    /// Deletion `M \ S`; the remaining elements are relabeled `0..n-|S|`
    /// preserving their order.
    pub fn delete(&self, mask: u64) -> Result<Matroid> {
        self.check_subset(mask)?;
        let keep = self.remaining(mask);
        Matroid::from_rank_fn(keep.len(), |child| {
            self.rank_unchecked(expand_mask(child, &keep))
        })
    }

    /// Contraction `M / S`, `rk(A) = rk(A + S) - rk(S)` on the relabeled
    /// remaining elements.
    pub fn contract(&self, mask: u64) -> Result<Matroid> {
        self.check_subset(mask)?;
        let keep = self.remaining(mask);
        let base = self.rank_unchecked(mask);
        Matroid::from_rank_fn(keep.len(), |child| {
            self.rank_unchecked(expand_mask(child, &keep) | mask) - base
        })
    }

    /// Restriction `M |_S = M \ (A - S)`.
    pub fn restrict(&self, mask: u64) -> Result<Matroid> {
        self.check_subset(mask)?;
        self.delete(self.ground.full_mask() & !mask)
    }

    fn remaining(&self, removed: u64) -> Vec<usize> {
        self.ground.elements().filter(|&e| removed & (1 << e) == 0).collect()
    }

    /// Direct sum; the second summand is relabeled to `n1..n1+n2-1`.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        let n = self.ground.n + other.ground.n;
        let _ = GroundSet::new(n)?;
        let n1 = self.ground.n;
        let m1 = self.ground.full_mask();
        Matroid::from_rank_fn(n, |mask| {
            self.rank_unchecked(mask & m1) + other.rank_unchecked(mask >> n1)
        })
    }

    /// All bases, in increasing mask order.
    pub fn bases(&self) -> Vec<u64> {
        let r = self.rank_m;
        (0..=self.ground.full_mask())
            .filter(|&mask| subset::card(mask) == r && self.rank_unchecked(mask) == r)
            .collect()
    }

    pub fn is_independent(&self, mask: u64) -> Result<bool> {
        Ok(self.rank(mask)? == subset::card(mask))
    }

    pub fn is_spanning(&self, mask: u64) -> Result<bool> {
        Ok(self.rank(mask)? == self.rank_m)
    }

    /// Parse the matroid JSON schema:
    /// `{"type":"uniform","r":2,"n":4}`,
    /// `{"type":"graph","vertices":4,"edges":[[0,1],...]}`,
    /// `{"type":"bases","n":7,"bases":[[0,1,2],...]}`,
    /// `{"type":"rank_table","n":3,"table":{"0":0,...}}` with decimal
    /// bitmask-string keys.
    pub fn from_json(value: &serde_json::Value) -> Result<Matroid> {
        let desc: MatroidJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::Json(format!("bad matroid description: {e}")))?;
        match desc {
            MatroidJson::Uniform { r, n } => Matroid::uniform(r, n),
            MatroidJson::Graph { vertices, edges } => {
                let edges: Vec<(usize, usize)> = edges
                    .iter()
                    .map(|pair| {
                        if pair.len() != 2 {
                            Err(Error::Json(format!("edge {pair:?} must have two vertices")))
                        } else {
                            Ok((pair[0], pair[1]))
                        }
                    })
                    .collect::<Result<_>>()?;
                Matroid::graphic(vertices, &edges)
            }
            MatroidJson::Bases { n, bases } => Matroid::from_bases(n, &bases),
            MatroidJson::RankTable { n, table } => {
                if n > MAX_ELEMENTS {
                    return Err(Error::InvalidParameters(format!(
                        "ground set of size {n} exceeds the supported maximum {MAX_ELEMENTS}"
                    )));
                }
                let size = 1usize << n;
                let mut dense = vec![u32::MAX; size];
                for (key, value) in &table {
                    let mask: usize = key
                        .parse()
                        .map_err(|_| Error::Json(format!("bad subset key `{key}`")))?;
                    if mask >= size {
                        return Err(Error::Json(format!(
                            "subset key `{key}` is out of range for n={n}"
                        )));
                    }
                    dense[mask] = *value;
                }
                if let Some(missing) = dense.iter().position(|&r| r == u32::MAX) {
                    return Err(Error::Json(format!(
                        "rank table is missing subset {missing}"
                    )));
                }
                Matroid::from_rank_table(n, &dense)
            }
        }
    }

    pub fn from_json_str(text: &str) -> Result<Matroid> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        Matroid::from_json(&value)
    }

    /// Canonical rank-table JSON form.
    pub fn to_json(&self) -> serde_json::Value {
        let mut table = serde_json::Map::new();
        for (mask, r) in self.table.iter().enumerate() {
            table.insert(mask.to_string(), serde_json::json!(r));
        }
        serde_json::json!({ "type": "rank_table", "n": self.ground.n, "table": table })
    }
}

#[derive(Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
enum MatroidJson {
    #[serde(rename = "uniform")]
    Uniform { r: usize, n: usize },
    #[serde(rename = "graph")]
    Graph { vertices: usize, edges: Vec<Vec<usize>> },
    #[serde(rename = "bases")]
    Bases { n: usize, bases: Vec<Vec<usize>> },
    #[serde(rename = "rank_table")]
    RankTable { n: usize, table: BTreeMap<String, u32> },
}

/// Check the four rank axioms on a dense table, reporting the violating
/// subset pair. Monotonicity and submodularity are checked through their
/// single-element local forms, which imply the general ones.
pub fn validate_rank_axioms(n: usize, table: &[u32]) -> Result<()> {
    if table[0] != 0 {
        return Err(Error::NotAPolymatroid(format!(
            "rk(empty) = {} instead of 0",
            table[0]
        )));
    }
    let size = 1u64 << n;
    for mask in 0..size {
        for e in 0..n {
            if mask & (1 << e) != 0 {
                continue;
            }
            let with_e = mask | (1 << e);
            if table[mask as usize] > table[with_e as usize] {
                return Err(Error::NotAPolymatroid(format!(
                    "monotonicity fails: rk({}) = {} > rk({}) = {}",
                    subset::format_set(mask),
                    table[mask as usize],
                    subset::format_set(with_e),
                    table[with_e as usize]
                )));
            }
            for f in (e + 1)..n {
                if mask & (1 << f) != 0 {
                    continue;
                }
                let with_f = mask | (1 << f);
                let with_both = with_e | (1 << f);
                if table[with_e as usize] + table[with_f as usize]
                    < table[with_both as usize] + table[mask as usize]
                {
                    return Err(Error::NotAPolymatroid(format!(
                        "submodularity fails for X = {}, Y = {}: {} + {} < {} + {}",
                        subset::format_set(with_e),
                        subset::format_set(with_f),
                        table[with_e as usize],
                        table[with_f as usize],
                        table[with_both as usize],
                        table[mask as usize]
                    )));
                }
            }
        }
    }
    Ok(())
}

fn expand_mask(child: u64, keep: &[usize]) -> u64 {
    let mut out = 0u64;
    let mut m = child;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        out |= 1u64 << keep[i];
    }
    out
}

/// Standard families used throughout the test corpus.
pub mod families {
    use super::Matroid;
    use crate::error::Result;

    /// Free matroid on `n` elements (Boolean).
    pub fn boolean(n: usize) -> Result<Matroid> {
        Matroid::uniform(n, n)
    }

    /// Cycle matroid of the complete graph `K_n`.
    pub fn complete_graph(n: usize) -> Result<Matroid> {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                edges.push((a, b));
            }
        }
        Matroid::graphic(n, &edges)
    }

    /// Cycle matroid of the cycle graph `C_n`.
    pub fn cycle_graph(n: usize) -> Result<Matroid> {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Matroid::graphic(n, &edges)
    }

    /// Cycle matroid of `K_4` with one edge removed.
    pub fn k4_minus_edge() -> Result<Matroid> {
        let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)];
        Matroid::graphic(4, &edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::mask_of;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn uniform_examples() {
        let l = Matroid::uniform(0, 1).unwrap();
        assert_eq!(l.rank_m(), 0);
        assert!(l.is_loop(0).unwrap());

        let c = Matroid::uniform(1, 1).unwrap();
        assert_eq!(c.rank_m(), 1);
        assert!(c.is_coloop(0).unwrap());

        let empty = Matroid::uniform(0, 0).unwrap();
        assert_eq!(empty.rank(0).unwrap(), 0);

        assert!(Matroid::uniform(2, 1).is_err());
    }

    #[test]
    fn graphic_examples() {
        // triangle is U_{2,3}
        let c3 = Matroid::graphic(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert!(c3.same_rank_table(&u23));

        // a single graph loop is U_{0,1}
        let gl = Matroid::graphic(1, &[(0, 0)]).unwrap();
        assert!(gl.same_rank_table(&Matroid::uniform(0, 1).unwrap()));

        // a double edge is a parallel pair
        let double = Matroid::graphic(2, &[(0, 1), (0, 1)]).unwrap();
        assert!(double.same_rank_table(&Matroid::uniform(1, 2).unwrap()));

        // K_4 has rank 3 on 6 elements with 16 bases (spanning trees)
        let k4 = families::complete_graph(4).unwrap();
        assert_eq!(k4.n(), 6);
        assert_eq!(k4.rank_m(), 3);
        assert_eq!(k4.bases().len(), 16);

        assert!(Matroid::graphic(2, &[(0, 5)]).is_err());
    }

    #[test]
    fn bases_examples() {
        let u12 = Matroid::from_bases(2, &[vec![0], vec![1]]).unwrap();
        assert!(u12.same_rank_table(&Matroid::uniform(1, 2).unwrap()));

        let all_pairs: Vec<Vec<usize>> = (0..4)
            .flat_map(|a| ((a + 1)..4).map(move |b| vec![a, b]))
            .collect();
        let u24 = Matroid::from_bases(4, &all_pairs).unwrap();
        assert!(u24.same_rank_table(&Matroid::uniform(2, 4).unwrap()));

        let m = Matroid::from_bases(3, &[vec![0, 1], vec![0, 2]]).unwrap();
        assert_eq!(m.rank(mask_of(&[1, 2])).unwrap(), 1);

        assert!(Matroid::from_bases(3, &[]).is_err());
        // {0,1} and {2,3} violate exchange
        assert!(Matroid::from_bases(4, &[vec![0, 1], vec![2, 3]]).is_err());
        // repeated elements inside a basis
        assert!(Matroid::from_bases(3, &[vec![0, 0]]).is_err());
    }

    #[test]
    fn rank_table_examples() {
        // n=1 with rk({0}) = 2: a polymatroid, not a matroid
        let p = Matroid::from_rank_table(1, &[0, 2]).unwrap();
        assert_eq!(p.kind(), MatroidKind::Polymatroid);

        // submodularity violation 1 + 1 < 3 + 0
        let err = Matroid::from_rank_table(2, &[0, 1, 1, 3]).unwrap_err();
        assert!(err.to_string().contains("submodularity"));

        let u23 = Matroid::uniform(2, 3).unwrap();
        let again = Matroid::from_rank_table(3, u23.rank_table()).unwrap();
        assert!(again.same_rank_table(&u23));
        assert_eq!(again.kind(), MatroidKind::Matroid);
    }

    #[test]
    fn rank_examples() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(u23.rank(0b111).unwrap(), 2);
        assert_eq!(u23.rank(0).unwrap(), 0);
        let l = Matroid::uniform(0, 1).unwrap();
        assert_eq!(l.rank(1).unwrap(), 0);
        assert!(u23.rank(0b1000).is_err());
    }

    #[test]
    fn dual_examples() {
        let u12 = Matroid::uniform(1, 2).unwrap();
        assert!(u12.dual().unwrap().same_rank_table(&u12));

        let u24 = Matroid::uniform(2, 4).unwrap();
        assert!(u24.dual().unwrap().same_rank_table(&u24));

        let l = Matroid::uniform(0, 1).unwrap();
        let c = Matroid::uniform(1, 1).unwrap();
        assert!(l.dual().unwrap().same_rank_table(&c));

        let p = Matroid::from_rank_table(1, &[0, 2]).unwrap();
        assert!(p.dual().is_err());
    }

    #[test]
    fn dual_is_involutive() {
        for (r, n) in [(0, 3), (1, 4), (2, 4), (3, 5), (2, 6)] {
            let m = Matroid::uniform(r, n).unwrap();
            assert!(m.dual().unwrap().dual().unwrap().same_rank_table(&m));
        }
        let k4 = families::complete_graph(4).unwrap();
        assert!(k4.dual().unwrap().dual().unwrap().same_rank_table(&k4));
    }

    #[test]
    fn minor_examples() {
        let u24 = Matroid::uniform(2, 4).unwrap();
        assert!(u24
            .delete(mask_of(&[3]))
            .unwrap()
            .same_rank_table(&Matroid::uniform(2, 3).unwrap()));
        assert!(u24
            .contract(mask_of(&[3]))
            .unwrap()
            .same_rank_table(&Matroid::uniform(1, 3).unwrap()));
        let u12 = Matroid::uniform(1, 2).unwrap();
        assert!(u12
            .contract(mask_of(&[1]))
            .unwrap()
            .same_rank_table(&Matroid::uniform(0, 1).unwrap()));
        assert!(u24
            .restrict(mask_of(&[0, 1, 2]))
            .unwrap()
            .same_rank_table(&Matroid::uniform(2, 3).unwrap()));
        assert!(u24.delete(0b10000).is_err());
    }

    #[test]
    fn minors_commute() {
        let m = families::complete_graph(4).unwrap();
        for a in 0..m.n() {
            for b in 0..m.n() {
                if a == b {
                    continue;
                }
                // contract a then delete b, against delete b then contract a,
                // tracking the relabeling
                let shift = |x: usize, removed: usize| if x > removed { x - 1 } else { x };
                let left = m
                    .contract(1 << a)
                    .unwrap()
                    .delete(1 << shift(b, a))
                    .unwrap();
                let right = m
                    .delete(1 << b)
                    .unwrap()
                    .contract(1 << shift(a, b))
                    .unwrap();
                assert!(left.same_rank_table(&right), "a={a}, b={b}");
            }
        }
    }

    #[test]
    fn direct_sum_examples() {
        let c = Matroid::uniform(1, 1).unwrap();
        let b2 = c.direct_sum(&c).unwrap();
        assert!(b2.same_rank_table(&families::boolean(2).unwrap()));

        let m = Matroid::uniform(2, 3).unwrap();
        let empty = Matroid::uniform(0, 0).unwrap();
        assert!(m.direct_sum(&empty).unwrap().same_rank_table(&m));

        let l = Matroid::uniform(0, 1).unwrap();
        let lc = l.direct_sum(&c).unwrap();
        assert_eq!(lc.rank_m(), 1);
        assert!(lc.is_loop(0).unwrap());
        assert!(lc.is_coloop(1).unwrap());
    }

    #[test]
    fn loop_coloop_simple() {
        assert!(Matroid::uniform(0, 1).unwrap().is_loop(0).unwrap());
        assert!(families::boolean(2).unwrap().is_coloop(0).unwrap());
        assert!(!Matroid::uniform(1, 2).unwrap().is_simple());
        assert!(Matroid::uniform(2, 3).unwrap().is_simple());
    }

    #[test]
    fn rank_axiom_suite_random_pairs() {
        let corpus: Vec<Matroid> = vec![
            Matroid::uniform(2, 5).unwrap(),
            families::complete_graph(4).unwrap(),
            families::cycle_graph(5).unwrap(),
            families::k4_minus_edge().unwrap(),
            Matroid::from_rank_table(2, &[0, 2, 2, 3]).unwrap(),
        ];
        let mut rng = StdRng::seed_from_u64(7);
        for m in &corpus {
            let full = m.ground().full_mask();
            for _ in 0..200 {
                let x = rng.gen::<u64>() & full;
                let y = rng.gen::<u64>() & full;
                let (rx, ry) = (m.rank(x).unwrap(), m.rank(y).unwrap());
                if x & !y == 0 {
                    assert!(rx <= ry);
                }
                let (ru, ri) = (m.rank(x | y).unwrap(), m.rank(x & y).unwrap());
                assert!(rx + ry >= ru + ri);
            }
        }
    }

    #[test]
    fn closure_examples() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(u23.closure(0).unwrap(), 0);
        assert_eq!(u23.closure(mask_of(&[0, 1])).unwrap(), 0b111);
        let l = Matroid::uniform(0, 1).unwrap();
        assert_eq!(l.closure(0).unwrap(), 1);
    }

    #[test]
    fn json_round_trip() {
        let m = Matroid::from_json_str(r#"{"type":"uniform","r":2,"n":4}"#).unwrap();
        assert!(m.same_rank_table(&Matroid::uniform(2, 4).unwrap()));

        let g = Matroid::from_json_str(
            r#"{"type":"graph","vertices":3,"edges":[[0,1],[1,2],[2,0]]}"#,
        )
        .unwrap();
        assert!(g.same_rank_table(&Matroid::uniform(2, 3).unwrap()));

        let b = Matroid::from_json_str(r#"{"type":"bases","n":2,"bases":[[0],[1]]}"#).unwrap();
        assert!(b.same_rank_table(&Matroid::uniform(1, 2).unwrap()));

        let t = Matroid::from_json_str(
            r#"{"type":"rank_table","n":1,"table":{"0":0,"1":1}}"#,
        )
        .unwrap();
        assert!(t.same_rank_table(&Matroid::uniform(1, 1).unwrap()));

        // canonical export parses back to the same matroid
        let m2 = Matroid::from_json(&m.to_json()).unwrap();
        assert!(m2.same_rank_table(&m));
    }
}
