//! Inclusion–exclusion check of valuativity over a user-supplied matroid
//! polytope subdivision nerve.
//!
//! The identity checked is `f(P) = Σ_{∅≠J⊆[s]} (-1)^{|J|+1} f(∩_{j∈J} P_j)`
//! with `f(∅) = 0`; empty intersections contribute nothing. Intersections
//! are user-supplied matroids, never derived from polytope geometry; the
//! checker validates the algebraic identity plus a basis-containment sanity
//! condition on the nerve.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::chain::{chain_tutte, chain_whitney, EnumOptions};
use crate::error::{Error, Result};
use crate::invariants::{
    ford_s_poly, g_invariant, j_mobius_poly, mobius_poly, opposite_char_poly,
};
use crate::matroid::Matroid;
use crate::poly::LaurentPoly;

/// A subdivision nerve: the subdivided matroid, the top-dimensional cells,
/// and every intersection of two or more cells (either a matroid or empty).
#[derive(Clone, Debug)]
pub struct SubdivisionNerve {
    pub big: Matroid,
    pub cells: Vec<Matroid>,
    /// Keyed by sorted 1-based index sets of size >= 2.
    pub intersections: BTreeMap<Vec<usize>, Option<Matroid>>,
}

impl SubdivisionNerve {
    /// Validate shape: every multi-cell index set present, singleton entries
    /// (if any were supplied through JSON) already merged into `cells`, and
    /// bases of finer intersections contained in those of coarser ones.
    pub fn validate(&self) -> Result<()> {
        let s = self.cells.len();
        if s == 0 {
            return Err(Error::NerveInconsistent("no cells".into()));
        }
        let n = self.big.n();
        for (i, cell) in self.cells.iter().enumerate() {
            if cell.n() != n {
                return Err(Error::NerveInconsistent(format!(
                    "cell {} has ground set size {}, expected {n}",
                    i + 1,
                    cell.n()
                )));
            }
        }
        for (key, value) in &self.intersections {
            if key.len() < 2 {
                return Err(Error::NerveInconsistent(format!(
                    "intersection key {key:?} must have at least two indices"
                )));
            }
            if key.windows(2).any(|w| w[0] >= w[1]) || key[0] == 0 || key[key.len() - 1] > s {
                return Err(Error::NerveInconsistent(format!(
                    "intersection key {key:?} is not a sorted set of 1-based cell indices"
                )));
            }
            if let Some(m) = value {
                if m.n() != n {
                    return Err(Error::NerveInconsistent(format!(
                        "intersection {key:?} has ground set size {}, expected {n}",
                        m.n()
                    )));
                }
            }
        }
        // every index set of size >= 2 must be listed
        for mask in 1u64..(1 << s) {
            let indices: Vec<usize> = (0..s).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect();
            if indices.len() >= 2 && !self.intersections.contains_key(&indices) {
                return Err(Error::NerveInconsistent(format!(
                    "missing intersection entry for cells {indices:?}"
                )));
            }
        }
        // bases of an intersection are bases of every participating cell
        for (key, value) in &self.intersections {
            let Some(inter) = value else { continue };
            let inter_bases = inter.bases();
            for &j in key {
                let cell_bases = self.cells[j - 1].bases();
                for b in &inter_bases {
                    if !cell_bases.contains(b) {
                        return Err(Error::NerveInconsistent(format!(
                            "intersection {key:?} has a basis outside cell {j}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The matroid of the intersection over a nonempty 0-based index set,
    /// or `None` for an empty intersection.
    fn piece(&self, indices: &[usize]) -> Result<Option<&Matroid>> {
        if indices.len() == 1 {
            return Ok(Some(&self.cells[indices[0]]));
        }
        let key: Vec<usize> = indices.iter().map(|&i| i + 1).collect();
        match self.intersections.get(&key) {
            Some(Some(m)) => Ok(Some(m)),
            Some(None) => Ok(None),
            None => Err(Error::NerveInconsistent(format!(
                "missing intersection entry for cells {key:?}"
            ))),
        }
    }

    /// Parse `{"big": <matroid>, "cells": [...], "intersections": {"1,2":
    /// <matroid or "empty">}}`. A singleton key like `"2"` is accepted and
    /// checked against the corresponding cell.
    pub fn from_json(value: &serde_json::Value) -> Result<SubdivisionNerve> {
        let big = Matroid::from_json(
            value
                .get("big")
                .ok_or_else(|| Error::Json("nerve json needs `big`".into()))?,
        )?;
        let cells_json = value
            .get("cells")
            .and_then(|c| c.as_array())
            .ok_or_else(|| Error::Json("nerve json needs a `cells` array".into()))?;
        let cells: Vec<Matroid> = cells_json.iter().map(Matroid::from_json).collect::<Result<_>>()?;
        let mut intersections = BTreeMap::new();
        if let Some(map) = value.get("intersections").and_then(|i| i.as_object()) {
            for (key, entry) in map {
                let indices: Vec<usize> = key
                    .split(',')
                    .map(|part| {
                        part.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Json(format!("bad intersection key `{key}`")))
                    })
                    .collect::<Result<_>>()?;
                let piece = if entry.as_str() == Some("empty") {
                    None
                } else {
                    Some(Matroid::from_json(entry)?)
                };
                if indices.len() == 1 {
                    // singleton entries must match the listed cell
                    let i = indices[0];
                    if i == 0 || i > cells.len() {
                        return Err(Error::NerveInconsistent(format!(
                            "singleton key `{key}` is out of range"
                        )));
                    }
                    match &piece {
                        Some(m) if m.same_rank_table(&cells[i - 1]) => {}
                        _ => {
                            return Err(Error::NerveInconsistent(format!(
                                "singleton intersection `{key}` does not equal cell {i}"
                            )))
                        }
                    }
                } else {
                    intersections.insert(indices, piece);
                }
            }
        }
        let nerve = SubdivisionNerve { big, cells, intersections };
        nerve.validate()?;
        Ok(nerve)
    }

    pub fn from_json_str(text: &str) -> Result<SubdivisionNerve> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        SubdivisionNerve::from_json(&value)
    }
}

/// The invariants registered with the valuation checker.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InvariantId {
    ChainTutte(usize),
    ChainWhitney(usize),
    MobiusPoly,
    OppositeCharPoly,
    JMobiusPoly,
    FordSPoly,
    GInvariant,
}

impl InvariantId {
    /// Parse a CLI-style name; `k` feeds the chain families.
    pub fn parse(name: &str, k: Option<usize>) -> Result<InvariantId> {
        Ok(match name {
            "chain-tutte" => InvariantId::ChainTutte(k.unwrap_or(2)),
            "chain-whitney" => InvariantId::ChainWhitney(k.unwrap_or(2)),
            "mobius-poly" => InvariantId::MobiusPoly,
            "opp-char-poly" => InvariantId::OppositeCharPoly,
            "j-mobius" => InvariantId::JMobiusPoly,
            "ford-s" => InvariantId::FordSPoly,
            "g-invariant" => InvariantId::GInvariant,
            other => return Err(Error::UnknownInvariant(other.to_string())),
        })
    }
}

impl fmt::Display for InvariantId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantId::ChainTutte(k) => write!(f, "chain-tutte(k={k})"),
            InvariantId::ChainWhitney(k) => write!(f, "chain-whitney(k={k})"),
            InvariantId::MobiusPoly => write!(f, "mobius-poly"),
            InvariantId::OppositeCharPoly => write!(f, "opp-char-poly"),
            InvariantId::JMobiusPoly => write!(f, "j-mobius"),
            InvariantId::FordSPoly => write!(f, "ford-s"),
            InvariantId::GInvariant => write!(f, "g-invariant"),
        }
    }
}

/// An invariant value closed under the signed sums of inclusion–exclusion:
/// either a polynomial or a signed rank-vector multiset.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum InvariantValue {
    Poly(LaurentPoly),
    RankVectors(BTreeMap<Vec<u32>, BigInt>),
}

impl InvariantValue {
    fn zero_like(&self) -> InvariantValue {
        match self {
            InvariantValue::Poly(_) => InvariantValue::Poly(LaurentPoly::zero()),
            InvariantValue::RankVectors(_) => InvariantValue::RankVectors(BTreeMap::new()),
        }
    }

    fn add_signed(&mut self, other: &InvariantValue, negate: bool) {
        match (self, other) {
            (InvariantValue::Poly(acc), InvariantValue::Poly(p)) => {
                if negate {
                    acc.add_assign(&-p);
                } else {
                    acc.add_assign(p);
                }
            }
            (InvariantValue::RankVectors(acc), InvariantValue::RankVectors(counts)) => {
                for (rv, c) in counts {
                    let entry = acc.entry(rv.clone()).or_insert_with(BigInt::zero);
                    if negate {
                        *entry -= c;
                    } else {
                        *entry += c;
                    }
                    if entry.is_zero() {
                        acc.remove(rv);
                    }
                }
            }
            _ => unreachable!("mixed invariant value kinds"),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            InvariantValue::Poly(p) => p.to_json(),
            InvariantValue::RankVectors(counts) => {
                let mut map = serde_json::Map::new();
                for (rv, c) in counts {
                    let key = rv.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",");
                    map.insert(key, serde_json::json!(c.to_string()));
                }
                serde_json::json!({ "counts": map })
            }
        }
    }
}

fn evaluate_invariant(id: InvariantId, m: &Matroid, opts: &EnumOptions) -> Result<InvariantValue> {
    Ok(match id {
        InvariantId::ChainTutte(k) => InvariantValue::Poly(chain_tutte(m, k, opts)?.poly),
        InvariantId::ChainWhitney(k) => InvariantValue::Poly(chain_whitney(m, k, opts)?.poly),
        InvariantId::MobiusPoly => InvariantValue::Poly(mobius_poly(m)?),
        InvariantId::OppositeCharPoly => InvariantValue::Poly(opposite_char_poly(m)?),
        InvariantId::JMobiusPoly => InvariantValue::Poly(j_mobius_poly(m)?),
        InvariantId::FordSPoly => InvariantValue::Poly(ford_s_poly(m)?),
        InvariantId::GInvariant => InvariantValue::RankVectors(g_invariant(m, opts)?.counts),
    })
}

/// Outcome of a valuation check: the invariant of the subdivided matroid
/// against the alternating sum over nonempty intersections.
#[derive(Clone, Debug)]
pub struct ValuationReport {
    pub invariant: String,
    pub equal: bool,
    pub lhs: InvariantValue,
    pub rhs: InvariantValue,
    pub pieces_evaluated: usize,
}

impl ValuationReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "invariant": self.invariant,
            "equal": self.equal,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "pieces_evaluated": self.pieces_evaluated,
        })
    }
}

/// Evaluate the invariant on the subdivided matroid and on every nonempty
/// intersection, and compare through inclusion–exclusion.
pub fn check_valuation(
    id: InvariantId,
    nerve: &SubdivisionNerve,
    opts: &EnumOptions,
) -> Result<ValuationReport> {
    nerve.validate()?;
    let lhs = evaluate_invariant(id, &nerve.big, opts)?;
    let mut rhs = lhs.zero_like();
    let s = nerve.cells.len();
    let mut pieces = 0usize;
    for mask in 1u64..(1 << s) {
        let indices: Vec<usize> = (0..s).filter(|i| mask & (1 << i) != 0).collect();
        let Some(piece) = nerve.piece(&indices)? else {
            continue;
        };
        let value = evaluate_invariant(id, piece, opts)?;
        rhs.add_signed(&value, indices.len() % 2 == 0);
        pieces += 1;
    }
    Ok(ValuationReport {
        invariant: id.to_string(),
        equal: lhs == rhs,
        lhs,
        rhs,
        pieces_evaluated: pieces,
    })
}

/// The two cells and common face of the standard hypersimplex split of
/// `U_{2,4}` along `x_1 + x_2 = 1`: the cells keep the bases meeting
/// `{0,1}` in at most (resp. at least) one element, and the face keeps the
/// bases doing both.
pub fn hypersimplex_split_u24() -> Result<SubdivisionNerve> {
    let big = Matroid::uniform(2, 4)?;
    let all_pairs: Vec<Vec<usize>> = (0..4usize)
        .flat_map(|a| ((a + 1)..4).map(move |b| vec![a, b]))
        .collect();
    let cell1: Vec<Vec<usize>> = all_pairs.iter().filter(|b| *b != &vec![0, 1]).cloned().collect();
    let cell2: Vec<Vec<usize>> = all_pairs.iter().filter(|b| *b != &vec![2, 3]).cloned().collect();
    let face: Vec<Vec<usize>> = all_pairs
        .iter()
        .filter(|b| *b != &vec![0, 1] && *b != &vec![2, 3])
        .cloned()
        .collect();
    let mut intersections = BTreeMap::new();
    intersections.insert(vec![1, 2], Some(Matroid::from_bases(4, &face)?));
    Ok(SubdivisionNerve {
        big,
        cells: vec![Matroid::from_bases(4, &cell1)?, Matroid::from_bases(4, &cell2)?],
        intersections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> EnumOptions {
        EnumOptions::default()
    }

    #[test]
    fn trivial_subdivision_passes_everything() {
        let m = Matroid::uniform(2, 3).unwrap();
        let nerve = SubdivisionNerve {
            big: m.clone(),
            cells: vec![m],
            intersections: BTreeMap::new(),
        };
        for id in [
            InvariantId::ChainTutte(2),
            InvariantId::ChainWhitney(2),
            InvariantId::MobiusPoly,
            InvariantId::OppositeCharPoly,
            InvariantId::JMobiusPoly,
            InvariantId::FordSPoly,
            InvariantId::GInvariant,
        ] {
            let report = check_valuation(id, &nerve, &opts()).unwrap();
            assert!(report.equal, "{id}");
        }
    }

    #[test]
    fn hypersimplex_split_is_valuative() {
        let nerve = hypersimplex_split_u24().unwrap();
        nerve.validate().unwrap();
        for id in [
            InvariantId::ChainTutte(1),
            InvariantId::ChainTutte(2),
            InvariantId::ChainWhitney(2),
            InvariantId::MobiusPoly,
            InvariantId::OppositeCharPoly,
            InvariantId::JMobiusPoly,
            InvariantId::FordSPoly,
            InvariantId::GInvariant,
        ] {
            let report = check_valuation(id, &nerve, &opts()).unwrap();
            assert!(report.equal, "{id}");
        }
    }

    #[test]
    fn corrupted_nerve_fails() {
        let mut nerve = hypersimplex_split_u24().unwrap();
        // swap one cell for a different matroid on the same ground set
        nerve.cells[0] = Matroid::uniform(2, 4).unwrap();
        let report = check_valuation(InvariantId::ChainTutte(2), &nerve, &opts()).unwrap();
        assert!(!report.equal);
    }

    #[test]
    fn missing_intersection_is_an_error() {
        let mut nerve = hypersimplex_split_u24().unwrap();
        nerve.intersections.clear();
        assert!(matches!(
            check_valuation(InvariantId::ChainTutte(2), &nerve, &opts()),
            Err(Error::NerveInconsistent(_))
        ));
    }

    #[test]
    fn intersection_bases_must_lie_in_the_cells() {
        let mut nerve = hypersimplex_split_u24().unwrap();
        // an intersection with a basis outside cell 1 is rejected up front
        nerve
            .intersections
            .insert(vec![1, 2], Some(Matroid::uniform(2, 4).unwrap()));
        assert!(matches!(nerve.validate(), Err(Error::NerveInconsistent(_))));
    }

    #[test]
    fn t2_pass_implies_its_evaluations_pass() {
        // mobius-poly and opp-char-poly are evaluations of T^2, so any nerve
        // passing for T^2 must pass for them as well
        let nerve = hypersimplex_split_u24().unwrap();
        let t2 = check_valuation(InvariantId::ChainTutte(2), &nerve, &opts()).unwrap();
        if t2.equal {
            for id in [InvariantId::MobiusPoly, InvariantId::OppositeCharPoly] {
                assert!(check_valuation(id, &nerve, &opts()).unwrap().equal);
            }
        }
    }

    #[test]
    fn nerve_json_round_trip() {
        let text = r#"{
            "big": {"type":"uniform","r":2,"n":4},
            "cells": [
                {"type":"bases","n":4,"bases":[[0,2],[0,3],[1,2],[1,3],[2,3]]},
                {"type":"bases","n":4,"bases":[[0,1],[0,2],[0,3],[1,2],[1,3]]}
            ],
            "intersections": {
                "1,2": {"type":"bases","n":4,"bases":[[0,2],[0,3],[1,2],[1,3]]}
            }
        }"#;
        let nerve = SubdivisionNerve::from_json_str(text).unwrap();
        assert_eq!(nerve.cells.len(), 2);
        let report = check_valuation(InvariantId::ChainTutte(2), &nerve, &opts()).unwrap();
        assert!(report.equal);

        // "empty" sentinel and singleton validation
        let text2 = r#"{
            "big": {"type":"uniform","r":1,"n":1},
            "cells": [{"type":"uniform","r":1,"n":1}, {"type":"uniform","r":1,"n":1}],
            "intersections": {"1,2": "empty", "1": {"type":"uniform","r":1,"n":1}}
        }"#;
        let nerve2 = SubdivisionNerve::from_json_str(text2).unwrap();
        assert_eq!(nerve2.intersections[&vec![1, 2]], None);

        let bad = r#"{
            "big": {"type":"uniform","r":1,"n":1},
            "cells": [{"type":"uniform","r":1,"n":1}],
            "intersections": {"1": {"type":"uniform","r":0,"n":1}}
        }"#;
        assert!(SubdivisionNerve::from_json_str(bad).is_err());
    }
}
