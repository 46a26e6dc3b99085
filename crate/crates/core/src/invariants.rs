//! Derived matroid invariants: characteristic and Möbius polynomials, the
//! opposite characteristic polynomial, the J-Möbius polynomial, Ford's
//! S-polynomial and expected codimension, and the G-invariant. Each
//! invariant with several computation routes (direct definition, chain
//! Tutte evaluation, deletion/contraction recursion) exposes every route so
//! the test suite can pin them against each other.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::chain::{chain_tutte, chain_whitney, evaluate_at_integers, EnumOptions};
use crate::error::{Error, Result};
use crate::lattice::FlatLattice;
use crate::matroid::Matroid;
use crate::poly::{LaurentPoly, Monomial, Variable};
use crate::subset;

fn require_matroid(m: &Matroid, op: &'static str) -> Result<()> {
    if m.is_polymatroid() {
        return Err(Error::PolymatroidUnsupported(op));
    }
    Ok(())
}

/// The classical Tutte polynomial, `T^1` in the variables `x1`, `y1`.
pub fn classical_tutte(m: &Matroid, opts: &EnumOptions) -> Result<LaurentPoly> {
    Ok(chain_tutte(m, 1, opts)?.poly)
}

/// Characteristic polynomial in `t`, as the signed subset sum
/// `Σ_S (-1)^{|S|} t^{rk(M)-rk(S)}`. Equals the Möbius-sum form over the
/// lattice of flats for loopless matroids and vanishes when a loop is
/// present.
pub fn characteristic_poly(m: &Matroid) -> Result<LaurentPoly> {
    require_matroid(m, "characteristic_poly")?;
    Ok(char_poly_on(m, m.ground().full_mask()))
}

/// Characteristic polynomial of the restriction to `domain`, computed with
/// the parent's rank table.
pub(crate) fn char_poly_on(m: &Matroid, domain: u64) -> LaurentPoly {
    let rank_domain = m.rank_unchecked(domain) as i64;
    let mut out = LaurentPoly::zero();
    for s in subset::submasks(domain) {
        let sign = if subset::card(s) % 2 == 0 { 1 } else { -1 };
        let e = rank_domain - m.rank_unchecked(s) as i64;
        out.add_term(Monomial::var(Variable::t(), e as i32), BigInt::from(sign));
    }
    out
}

/// The reciprocal `t^{rk} χ(1/t)` of the restriction to `domain`, which is
/// the polynomial `Σ_{S ⊆ domain} (-1)^{|S|} t^{rk(S)}`.
fn rev_char_poly_on(m: &Matroid, domain: u64) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for s in subset::submasks(domain) {
        let sign = if subset::card(s) % 2 == 0 { 1 } else { -1 };
        out.add_term(
            Monomial::var(Variable::t(), m.rank_unchecked(s) as i32),
            BigInt::from(sign),
        );
    }
    out
}

/// Möbius polynomial `Σ_{X <= Y} μ(X,Y) s^{crk(X)} t^{crk(Y)}` over flat
/// pairs of the lattice of flats.
pub fn mobius_poly(m: &Matroid) -> Result<LaurentPoly> {
    let lattice = FlatLattice::new(m)?;
    let mut out = LaurentPoly::zero();
    for i in 0..lattice.num_flats() {
        for j in 0..lattice.num_flats() {
            if !lattice.leq(i, j) {
                continue;
            }
            let mu = lattice.mobius_by_index(i, j)?;
            out.add_term(
                Monomial::from_pairs([
                    (Variable::s(), lattice.corank_of_index(i) as i32),
                    (Variable::t(), lattice.corank_of_index(j) as i32),
                ]),
                BigInt::from(mu),
            );
        }
    }
    Ok(out)
}

/// Möbius polynomial through the generalized deletion/contraction
/// recursion: split at a non-loop non-coloop element `a`, with the
/// correction term
/// `Σ_{S ⊆ A-a} (-1)^{|S|+1} s^{rk(M)-rk(S)} t^{rk(M)-rk(S+a)} χ_{M|S}(s)`.
pub fn mobius_poly_recursive(m: &Matroid) -> Result<LaurentPoly> {
    require_matroid(m, "mobius_poly_recursive")?;
    let Some(a) = pivot_element(m)? else {
        return mobius_poly(m);
    };
    let a_bit = 1u64 << a;
    let mut out = mobius_poly_recursive(&m.delete(a_bit)?)?;
    out.add_assign(&mobius_poly_recursive(&m.contract(a_bit)?)?);

    let rank_m = m.rank_m() as i64;
    let rest = m.ground().full_mask() & !a_bit;
    for s in subset::submasks(rest) {
        let sign = if subset::card(s) % 2 == 0 { -1 } else { 1 };
        let chi = char_poly_on_var(m, s, Variable::s());
        let shift = Monomial::from_pairs([
            (Variable::s(), (rank_m - m.rank_unchecked(s) as i64) as i32),
            (
                Variable::t(),
                (rank_m - m.rank_unchecked(s | a_bit) as i64) as i32,
            ),
        ]);
        let term = &chi * &LaurentPoly::monomial(shift, BigInt::from(sign));
        out.add_assign(&term);
    }
    Ok(out)
}

/// `char_poly_on` in an arbitrary scalar variable.
fn char_poly_on_var(m: &Matroid, domain: u64, var: Variable) -> LaurentPoly {
    let rank_domain = m.rank_unchecked(domain) as i64;
    let mut out = LaurentPoly::zero();
    for s in subset::submasks(domain) {
        let sign = if subset::card(s) % 2 == 0 { 1 } else { -1 };
        let e = rank_domain - m.rank_unchecked(s) as i64;
        out.add_term(Monomial::var(var, e as i32), BigInt::from(sign));
    }
    out
}

/// Opposite characteristic polynomial: the characteristic polynomial of the
/// order-reversed lattice of flats, `Σ_x μ(x, 1̂) t^{rk(x)}`.
pub fn opposite_char_poly(m: &Matroid) -> Result<LaurentPoly> {
    let lattice = FlatLattice::new(m)?;
    let top = lattice.top();
    let mut out = LaurentPoly::zero();
    for i in 0..lattice.num_flats() {
        if !lattice.leq(i, top) {
            continue;
        }
        out.add_term(
            Monomial::var(Variable::t(), lattice.rank_of_index(i) as i32),
            BigInt::from(lattice.mobius_by_index(i, top)?),
        );
    }
    Ok(out)
}

/// Opposite characteristic polynomial through the recursion
/// `χop(M) = χop(M\a) + t χop(M/a) + Σ (-1)^{|S|+1} t^{rk S} χ_{M|S}(1/t)`
/// over the subsets `S ⊆ A-a` spanning `M/a`.
pub fn opposite_char_poly_recursive(m: &Matroid) -> Result<LaurentPoly> {
    require_matroid(m, "opposite_char_poly_recursive")?;
    let Some(a) = pivot_element(m)? else {
        return opposite_char_poly(m);
    };
    let a_bit = 1u64 << a;
    let mut out = opposite_char_poly_recursive(&m.delete(a_bit)?)?;
    let t = LaurentPoly::variable(Variable::t());
    out.add_assign(&(&t * &opposite_char_poly_recursive(&m.contract(a_bit)?)?));

    let rank_m = m.rank_m();
    let rest = m.ground().full_mask() & !a_bit;
    for s in subset::submasks(rest) {
        if m.rank_unchecked(s | a_bit) != rank_m {
            continue;
        }
        let sign = if subset::card(s) % 2 == 0 { -1 } else { 1 };
        let rev = rev_char_poly_on(m, s);
        out.add_assign(&(&rev * &LaurentPoly::constant(sign)));
    }
    Ok(out)
}

/// Smallest element that is neither a loop nor a coloop.
fn pivot_element(m: &Matroid) -> Result<Option<usize>> {
    for e in 0..m.n() {
        if !m.is_loop(e)? && !m.is_coloop(e)? {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

/// Generalized J-Möbius polynomial
/// `Σ_{(x,y,z) flags} J(x,y,z) t^{crk(x)+crk(y)+crk(z)}`.
pub fn j_mobius_poly(m: &Matroid) -> Result<LaurentPoly> {
    let lattice = FlatLattice::new(m)?;
    let mut out = LaurentPoly::zero();
    for (&(x, y, z), &j) in lattice.j_table() {
        let e = lattice.corank_of_index(x) + lattice.corank_of_index(y)
            + lattice.corank_of_index(z);
        out.add_term(Monomial::var(Variable::t(), e as i32), BigInt::from(j));
    }
    Ok(out)
}

/// Ford's subset weights: `a(∅) = 0` and
/// `a(A) = (|A| - rk(A)) - Σ_{B ⊂ A} a(B)`, tabulated over all subsets.
/// The driving quantity is the corank of the subset in Ford's sense, the
/// nullity `|A| - rk(A)`; only this reading makes `ec` vanish on free
/// matroids and agree with the derivative route.
pub fn ford_a_table(m: &Matroid) -> Result<Vec<i64>> {
    require_matroid(m, "ford_a")?;
    let full = m.ground().full_mask();
    let mut table = vec![0i64; (full + 1) as usize];
    for mask in 1..=full {
        let mut below = 0i64;
        for b in subset::submasks(mask) {
            if b != mask {
                below += table[b as usize];
            }
        }
        let nullity = subset::card(mask) as i64 - m.rank_unchecked(mask) as i64;
        table[mask as usize] = nullity - below;
    }
    Ok(table)
}

/// A single Ford weight `a(A)`.
pub fn ford_a(m: &Matroid, mask: u64) -> Result<i64> {
    if mask & !m.ground().full_mask() != 0 {
        return Err(Error::OutOfRange { mask, n: m.n() });
    }
    Ok(ford_a_table(m)?[mask as usize])
}

/// Expected codimension `ec(M) = Σ_A (rk(M) - rk(A)) a(A)`, by the direct
/// recursion on the subset weights.
pub fn expected_codim(m: &Matroid) -> Result<i64> {
    let table = ford_a_table(m)?;
    let rank_m = m.rank_m() as i64;
    let mut total = 0i64;
    for mask in 0..=m.ground().full_mask() {
        total += (rank_m - m.rank_unchecked(mask) as i64) * table[mask as usize];
    }
    Ok(total)
}

/// Expected codimension from the second chain Tutte polynomial:
/// `∂x ∂y S_M(x,y,z)` at `(1,1,-1)`, with `S_M` obtained through the Ford
/// substitution into `T^2`.
pub fn expected_codim_via_tutte(m: &Matroid, opts: &EnumOptions) -> Result<i64> {
    require_matroid(m, "expected_codim_via_tutte")?;
    let s_poly = ford_s_from_chain_tutte(m, opts)?;
    let dd = s_poly
        .partial_derivative(Variable::x(1))
        .partial_derivative(Variable::y(1));
    let mut point = BTreeMap::new();
    point.insert(Variable::x(1), BigRational::one());
    point.insert(Variable::y(1), BigRational::one());
    point.insert(Variable::z(), -BigRational::one());
    let value = dd.evaluate(&point)?;
    if !value.is_integer() {
        return Err(Error::Domain(format!("expected an integer, got {value}")));
    }
    let int = value.to_integer();
    i64::try_from(&int).map_err(|_| Error::Domain(format!("{int} does not fit in i64")))
}

/// Expected codimension through deletion/contraction:
/// `ec(M) = ec(M\a) + ec(M/a)
///   - Σ_{A ⊆ B ⊆ A-a} (|A|-rk A)(rk(M/a)-rk_{M/a}(B))(-1)^{|B|-|A|}`.
pub fn expected_codim_recursive(m: &Matroid) -> Result<i64> {
    require_matroid(m, "expected_codim_recursive")?;
    let Some(a) = pivot_element(m)? else {
        return expected_codim(m);
    };
    let a_bit = 1u64 << a;
    let mut total = expected_codim_recursive(&m.delete(a_bit)?)?
        + expected_codim_recursive(&m.contract(a_bit)?)?;
    let rank_contract = (m.rank_m() - m.rank_unchecked(a_bit)) as i64;
    let rk_a = m.rank_unchecked(a_bit) as i64;
    let rest = m.ground().full_mask() & !a_bit;
    for b in subset::submasks(rest) {
        let rk_b_contract = m.rank_unchecked(b | a_bit) as i64 - rk_a;
        let outer = rank_contract - rk_b_contract;
        if outer == 0 {
            continue;
        }
        for a_sub in subset::submasks(b) {
            let nullity = subset::card(a_sub) as i64 - m.rank_unchecked(a_sub) as i64;
            if nullity == 0 {
                continue;
            }
            let sign = if (subset::card(b) - subset::card(a_sub)) % 2 == 0 { 1 } else { -1 };
            total -= nullity * outer * sign;
        }
    }
    Ok(total)
}

/// Ford's S-polynomial
/// `S_M(x,y,z) = Σ_{A ⊆ B} x^{|A|-rk A} y^{rk M-rk B} z^{|B|-|A|}`.
pub fn ford_s_poly(m: &Matroid) -> Result<LaurentPoly> {
    let rank_m = m.rank_m() as i64;
    let mut out = LaurentPoly::zero();
    for b in subset::submasks(m.ground().full_mask()) {
        let eb = rank_m - m.rank_unchecked(b) as i64;
        for a in subset::submasks(b) {
            let ea = subset::card(a) as i64 - m.rank_unchecked(a) as i64;
            let ez = (subset::card(b) - subset::card(a)) as i64;
            out.add_term(
                Monomial::from_pairs([
                    (Variable::x(1), ea as i32),
                    (Variable::y(1), eb as i32),
                    (Variable::z(), ez as i32),
                ]),
                BigInt::one(),
            );
        }
    }
    Ok(out)
}

/// The Ford substitution
/// `T^2(z+1, y z^{-1} + 1; x z^{-1} + 1, z+1)`, with all the Laurent
/// intermediates required to cancel. Equals `ford_s_poly` exactly.
pub fn ford_s_from_chain_tutte(m: &Matroid, opts: &EnumOptions) -> Result<LaurentPoly> {
    let t2 = chain_tutte(m, 2, opts)?;
    let z = LaurentPoly::variable(Variable::z());
    let z_inv = LaurentPoly::monomial(Monomial::var(Variable::z(), -1), BigInt::one());
    let one = LaurentPoly::one();
    let mut bindings = BTreeMap::new();
    bindings.insert(Variable::x(1), &z + &one);
    bindings.insert(
        Variable::x(2),
        &(&LaurentPoly::variable(Variable::y(1)) * &z_inv) + &one,
    );
    bindings.insert(
        Variable::y(1),
        &(&LaurentPoly::variable(Variable::x(1)) * &z_inv) + &one,
    );
    bindings.insert(Variable::y(2), &z + &one);
    let s_poly = t2.poly.substitute(&bindings)?;
    if s_poly.has_negative_exponent() {
        return Err(Error::NegativeExponent(
            "Ford substitution left a negative power of z".into(),
        ));
    }
    Ok(s_poly)
}

/// The G-invariant: multiset of rank-increment vectors over the `n!`
/// complete chains, stored as a map from rank vector to multiplicity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GInvariant {
    pub n: usize,
    pub counts: BTreeMap<Vec<u32>, BigInt>,
}

impl GInvariant {
    pub fn total_mass(&self) -> BigInt {
        self.counts.values().sum()
    }

    /// `{"n":3,"counts":{"1,1,0":6}}` with comma-joined rank-vector keys.
    pub fn to_json(&self) -> serde_json::Value {
        let mut counts = serde_json::Map::new();
        for (rv, c) in &self.counts {
            let key = rv.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",");
            let value = match i64::try_from(c) {
                Ok(v) => serde_json::json!(v),
                Err(_) => serde_json::json!(c.to_string()),
            };
            counts.insert(key, value);
        }
        serde_json::json!({ "n": self.n, "counts": counts })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<GInvariant> {
        let n = value
            .get("n")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| Error::Json("g-invariant json needs `n`".into()))? as usize;
        let counts_obj = value
            .get("counts")
            .and_then(|v| v.as_object())
            .ok_or_else(|| Error::Json("g-invariant json needs `counts`".into()))?;
        let mut counts = BTreeMap::new();
        for (key, v) in counts_obj {
            let rv: Vec<u32> = if key.is_empty() {
                Vec::new()
            } else {
                key.split(',')
                    .map(|part| {
                        part.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::Json(format!("bad rank vector `{key}`")))
                    })
                    .collect::<Result<_>>()?
            };
            let c = match v {
                serde_json::Value::Number(num) => num
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| Error::Json(format!("bad count for `{key}`")))?,
                serde_json::Value::String(s) =>

                    s.parse::<BigInt>()
                        .map_err(|_| Error::Json(format!("bad count for `{key}`")))?,
                _ => return Err(Error::Json(format!("bad count for `{key}`"))),
            };
            counts.insert(rv, c);
        }
        Ok(GInvariant { n, counts })
    }
}

/// The G-invariant by direct permutation enumeration. Each permutation's
/// prefix chain contributes its vector of rank increments.
pub fn g_invariant(m: &Matroid, opts: &EnumOptions) -> Result<GInvariant> {
    let n = m.n();
    let mut factorial: u128 = 1;
    for i in 1..=n as u128 {
        factorial = factorial.saturating_mul(i);
    }
    if factorial > opts.max_perms as u128 {
        return Err(Error::BudgetExceeded { needed: factorial, limit: opts.max_perms });
    }

    let workers = opts.threads.max(1).min(n.max(1));
    let mut maps: Vec<BTreeMap<Vec<u32>, BigInt>> = Vec::new();
    if n == 0 {
        let mut counts = BTreeMap::new();
        counts.insert(Vec::new(), BigInt::one());
        return Ok(GInvariant { n, counts });
    }
    if workers == 1 {
        let mut acc = BTreeMap::new();
        for first in 0..n {
            g_permutations(m, first, &mut acc);
        }
        maps.push(acc);
    } else {
        // partition by first element; merging is associative, so the result
        // does not depend on the worker count
        std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for w in 0..workers {
                handles.push(scope.spawn(move || {
                    let mut acc = BTreeMap::new();
                    let mut first = w;
                    while first < n {
                        g_permutations(m, first, &mut acc);
                        first += workers;
                    }
                    acc
                }));
            }
            for h in handles {
                maps.push(h.join().expect("permutation worker panicked"));
            }
        });
    }
    let mut counts: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    for map in maps {
        for (rv, c) in map {
            *counts.entry(rv).or_insert_with(BigInt::zero) += c;
        }
    }
    Ok(GInvariant { n, counts })
}

fn g_permutations(m: &Matroid, first: usize, acc: &mut BTreeMap<Vec<u32>, BigInt>) {
    let n = m.n();
    let mut increments = vec![0u32; n];
    let first_bit = 1u64 << first;
    increments[0] = m.rank_unchecked(first_bit);
    g_permutations_rec(m, first_bit, 1, &mut increments, acc);
}

fn g_permutations_rec(
    m: &Matroid,
    used: u64,
    depth: usize,
    increments: &mut Vec<u32>,
    acc: &mut BTreeMap<Vec<u32>, BigInt>,
) {
    let n = m.n();
    if depth == n {
        acc.entry(increments.clone())
            .and_modify(|c| *c += 1)
            .or_insert_with(BigInt::one);
        return;
    }
    let prefix_rank = m.rank_unchecked(used);
    for e in 0..n {
        let bit = 1u64 << e;
        if used & bit != 0 {
            continue;
        }
        increments[depth] = m.rank_unchecked(used | bit) - prefix_rank;
        g_permutations_rec(m, used | bit, depth + 1, increments, acc);
    }
}

/// The G-invariant read off the top chain Whitney polynomial `W^n`:
/// a monomial with exponents `(a_i; b_i)` comes from complete chains
/// exactly when `a_i - b_i = rk(M) - i` for every `i`, and then contributes
/// its coefficient to the rank vector
/// `(rk(M) - a_1, a_1 - a_2, …, a_{n-1} - a_n)`.
pub fn g_from_top_tutte(m: &Matroid, opts: &EnumOptions) -> Result<GInvariant> {
    let n = m.n();
    let top = chain_whitney(m, n, opts)?;
    let rank_m = m.rank_m() as i64;
    let mut counts: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    'terms: for (mono, coeff) in top.poly.terms() {
        let mut alphas = Vec::with_capacity(n);
        for i in 1..=n {
            let alpha = mono.exponent(Variable::a(i as u32)) as i64;
            let beta = mono.exponent(Variable::b(i as u32)) as i64;
            if alpha - beta != rank_m - i as i64 {
                continue 'terms;
            }
            alphas.push(alpha);
        }
        let mut rank_vector = Vec::with_capacity(n);
        let mut prev = rank_m;
        for &alpha in &alphas {
            let increment = prev - alpha;
            debug_assert!(increment >= 0);
            rank_vector.push(increment as u32);
            prev = alpha;
        }
        *counts.entry(rank_vector).or_insert_with(BigInt::zero) += coeff;
    }
    if counts.is_empty() && n == 0 {
        counts.insert(Vec::new(), BigInt::one());
    }
    Ok(GInvariant { n, counts })
}

/// One constant-evaluation pair: the value through a chain Tutte evaluation
/// and the value by direct combinatorial count.
pub type EvalPair = (BigInt, BigInt);

/// Constant evaluations of `T^k` (and `T^2` for the pair-counting ones),
/// each computed both ways.
#[derive(Clone, Debug)]
pub struct EvaluationRecord {
    pub k: usize,
    /// `T^k(1,…,1;1,…,1)` versus the number of bases.
    pub num_bases: EvalPair,
    /// `T^1(2;1)` with `T^1` specialized out of `T^k`, versus the number of
    /// independent sets.
    pub num_independent: EvalPair,
    /// `T^k(1,…,1;0,…,0)` versus `1` for even k, and for odd k the signed
    /// Möbius value `(-1)^{rk M} μ(0̂,1̂)` (zero when a loop is present).
    pub eval_1100: EvalPair,
    /// `T^k(0,…,0;1,…,1)` versus `1` for even k and the signed reduced
    /// Euler characteristic `(-1)^{rk M} Σ_{S independent} (-1)^{|S|}` for
    /// odd k.
    pub euler: EvalPair,
    /// `T^2(2,1;1,2)` versus the number of pairs independent ⊆ spanning.
    pub eval_2112: EvalPair,
    /// `T^2(2,2;1,1)` versus `Σ_m 2^m I_m`.
    pub sum_2m_im: EvalPair,
    /// `T^2(1,1;2,2)` versus the number of nested spanning pairs.
    pub spanning_pairs: EvalPair,
}

impl EvaluationRecord {
    pub fn all_agree(&self) -> bool {
        let pairs = [
            &self.num_bases,
            &self.num_independent,
            &self.eval_1100,
            &self.euler,
            &self.eval_2112,
            &self.sum_2m_im,
            &self.spanning_pairs,
        ];
        pairs.iter().all(|(a, b)| a == b)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let pair = |p: &EvalPair| {
            serde_json::json!({ "via_tutte": p.0.to_string(), "direct": p.1.to_string() })
        };
        serde_json::json!({
            "k": self.k,
            "num_bases": pair(&self.num_bases),
            "num_independent": pair(&self.num_independent),
            "eval_1100": pair(&self.eval_1100),
            "euler": pair(&self.euler),
            "eval_2112": pair(&self.eval_2112),
            "sum_2m_im": pair(&self.sum_2m_im),
            "spanning_pairs": pair(&self.spanning_pairs),
            "all_agree": self.all_agree(),
        })
    }
}

/// Compute the whole constant-evaluation record for level `k >= 1`.
pub fn constant_evaluations(m: &Matroid, k: usize, opts: &EnumOptions) -> Result<EvaluationRecord> {
    require_matroid(m, "constant_evaluations")?;
    if k == 0 {
        return Err(Error::InvalidParameters(
            "constant evaluations need k >= 1".into(),
        ));
    }
    let t_k = chain_tutte(m, k, opts)?;
    let t_2 = if k == 2 { t_k.clone() } else { chain_tutte(m, 2, opts)? };
    // the independent-set count lives at level one; recover it from T^k
    // through the exact specialization
    let t_1 = crate::chain::specialize_down(&t_k, 1)?;

    let ones = vec![1i64; k];
    let zeros = vec![0i64; k];

    let full = m.ground().full_mask();
    let mut bases = 0u64;
    let mut independent = 0u64;
    let mut euler_tilde = 0i64;
    let mut sum_2m = BigInt::zero();
    for s in 0..=full {
        let r = m.rank_unchecked(s);
        let cardinality = subset::card(s);
        if r == cardinality {
            independent += 1;
            if r == m.rank_m() {
                bases += 1;
            }
            let sign = if cardinality % 2 == 0 { 1 } else { -1 };
            euler_tilde += sign;
            sum_2m += BigInt::one() << cardinality;
        }
    }
    let mut indep_in_spanning = 0u64;
    let mut spanning_pairs = 0u64;
    for b in 0..=full {
        if m.rank_unchecked(b) != m.rank_m() {
            continue;
        }
        for a in subset::submasks(b) {
            if m.rank_unchecked(a) == subset::card(a) {
                indep_in_spanning += 1;
            }
            if m.rank_unchecked(a) == m.rank_m() {
                spanning_pairs += 1;
            }
        }
    }

    let sign_rank = if m.rank_m() % 2 == 0 { 1i64 } else { -1 };
    let expected_1100 = if k % 2 == 0 {
        BigInt::one()
    } else if m.is_loopless() {
        let lattice = FlatLattice::new(m)?;
        BigInt::from(sign_rank * lattice.mobius_by_index(lattice.bottom(), lattice.top())?)
    } else {
        BigInt::zero()
    };
    let expected_euler = if k % 2 == 0 {
        BigInt::one()
    } else {
        BigInt::from(sign_rank * euler_tilde)
    };

    Ok(EvaluationRecord {
        k,
        num_bases: (evaluate_at_integers(&t_k, &ones, &ones)?, BigInt::from(bases)),
        num_independent: (
            evaluate_at_integers(&t_1, &[2], &[1])?,
            BigInt::from(independent),
        ),
        eval_1100: (evaluate_at_integers(&t_k, &ones, &zeros)?, expected_1100),
        euler: (evaluate_at_integers(&t_k, &zeros, &ones)?, expected_euler),
        eval_2112: (
            evaluate_at_integers(&t_2, &[2, 1], &[1, 2])?,
            BigInt::from(indep_in_spanning),
        ),
        sum_2m_im: (evaluate_at_integers(&t_2, &[2, 2], &[1, 1])?, sum_2m),
        spanning_pairs: (
            evaluate_at_integers(&t_2, &[1, 1], &[2, 2])?,
            BigInt::from(spanning_pairs),
        ),
    })
}

/// Evaluate `T^2` at an integer point; convenience for the table checks.
pub fn t2_at(m: &Matroid, point: (i64, i64, i64, i64), opts: &EnumOptions) -> Result<BigInt> {
    let t2 = chain_tutte(m, 2, opts)?;
    evaluate_at_integers(&t2, &[point.0, point.1], &[point.2, point.3])
}

/// The two sides of the four-matroid elimination identity that a two-level
/// Tutte-Grothendieck recursion would force. They are computed from the
/// definition-derived `T^2` values of the loop, the coloop, `U_{1,2}`,
/// `U_{1,3}`, `U_{2,3}` and `U_{2,4}`; inequality witnesses that `T^2`
/// satisfies no such recursion.
pub fn tutte_grothendieck_witness(opts: &EnumOptions) -> Result<(LaurentPoly, LaurentPoly)> {
    let t2 = |m: &Matroid| -> Result<LaurentPoly> { Ok(chain_tutte(m, 2, opts)?.poly) };
    let l = t2(&Matroid::uniform(0, 1)?)?;
    let c = t2(&Matroid::uniform(1, 1)?)?;
    let d = t2(&Matroid::uniform(1, 2)?)?;
    let u13 = t2(&Matroid::uniform(1, 3)?)?;
    let u23 = t2(&Matroid::uniform(2, 3)?)?;
    let u24 = t2(&Matroid::uniform(2, 4)?)?;

    let dc_minus_c = &(&d * &c) - &c;
    let lhs = &(&dc_minus_c * &c) * &u24;

    let bracket = &(&u23 * &c) - &d;
    let mut rhs = &d * &u23;
    rhs.add_assign(&-&(&(&bracket * &l) * &u23));
    rhs.add_assign(&(&bracket * &u13));
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::families;
    use crate::subset::mask_of;

    fn opts() -> EnumOptions {
        EnumOptions::default()
    }

    fn u(r: usize, n: usize) -> Matroid {
        Matroid::uniform(r, n).unwrap()
    }

    fn poly_t(coeffs: &[(i32, i64)]) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for &(e, c) in coeffs {
            p.add_term(Monomial::var(Variable::t(), e), BigInt::from(c));
        }
        p
    }

    #[test]
    fn classical_tutte_examples() {
        let x = LaurentPoly::variable(Variable::x(1));
        let y = LaurentPoly::variable(Variable::y(1));
        assert_eq!(classical_tutte(&u(1, 1), &opts()).unwrap(), x);
        assert_eq!(classical_tutte(&u(0, 1), &opts()).unwrap(), y);
        let mut expect = LaurentPoly::variable(Variable::x(1)).pow(2);
        expect.add_assign(&x);
        expect.add_assign(&y);
        assert_eq!(classical_tutte(&u(2, 3), &opts()).unwrap(), expect);
    }

    #[test]
    fn characteristic_poly_examples() {
        assert_eq!(characteristic_poly(&u(1, 1)).unwrap(), poly_t(&[(1, 1), (0, -1)]));
        assert_eq!(
            characteristic_poly(&u(2, 3)).unwrap(),
            poly_t(&[(2, 1), (1, -3), (0, 2)])
        );
        // a loop kills the polynomial
        let loopy = u(0, 1).direct_sum(&u(1, 1)).unwrap();
        assert!(characteristic_poly(&loopy).unwrap().is_zero());
    }

    #[test]
    fn characteristic_poly_matches_mobius_sum() {
        for m in [u(2, 3), u(2, 4), families::boolean(3).unwrap(), families::cycle_graph(4).unwrap()] {
            let lattice = FlatLattice::new(&m).unwrap();
            let mut oracle = LaurentPoly::zero();
            for i in 0..lattice.num_flats() {
                oracle.add_term(
                    Monomial::var(Variable::t(), lattice.corank_of_index(i) as i32),
                    BigInt::from(lattice.mobius_by_index(lattice.bottom(), i).unwrap()),
                );
            }
            assert_eq!(characteristic_poly(&m).unwrap(), oracle);
        }
    }

    #[test]
    fn mobius_poly_examples() {
        // two-flat lattice by hand: (0,0), (0,1), (1,1) give st - s + 1
        let got = mobius_poly(&u(1, 1)).unwrap();
        let mut expect = LaurentPoly::zero();
        expect.add_term(
            Monomial::from_pairs([(Variable::s(), 1), (Variable::t(), 1)]),
            BigInt::one(),
        );
        expect.add_term(Monomial::var(Variable::s(), 1), BigInt::from(-1));
        expect.add_term(Monomial::one(), BigInt::one());
        assert_eq!(got, expect);

        // constant term is always 1
        for m in [u(2, 3), u(2, 4), families::cycle_graph(4).unwrap()] {
            let chi = mobius_poly(&m).unwrap();
            assert_eq!(chi.coefficient(&Monomial::one()), BigInt::one());
        }
    }

    #[test]
    fn mobius_poly_is_t2_evaluation() {
        for m in [u(1, 1), u(1, 2), u(2, 3), families::boolean(2).unwrap()] {
            let t2 = chain_tutte(&m, 2, &opts()).unwrap().poly;
            let mut bindings = BTreeMap::new();
            bindings.insert(
                Variable::x(1),
                &LaurentPoly::one() - &LaurentPoly::variable(Variable::s()),
            );
            bindings.insert(
                Variable::x(2),
                &LaurentPoly::one() - &LaurentPoly::variable(Variable::t()),
            );
            bindings.insert(Variable::y(1), LaurentPoly::zero());
            bindings.insert(Variable::y(2), LaurentPoly::zero());
            assert_eq!(t2.substitute(&bindings).unwrap(), mobius_poly(&m).unwrap());
        }
    }

    #[test]
    fn mobius_poly_recursion_agrees() {
        for m in [u(2, 3), u(2, 4), families::cycle_graph(4).unwrap()] {
            assert_eq!(mobius_poly_recursive(&m).unwrap(), mobius_poly(&m).unwrap());
        }
    }

    #[test]
    fn opposite_char_poly_examples() {
        assert_eq!(opposite_char_poly(&u(1, 1)).unwrap(), poly_t(&[(1, 1), (0, -1)]));
        assert_eq!(
            opposite_char_poly(&u(2, 3)).unwrap(),
            poly_t(&[(2, 1), (1, -3), (0, 2)])
        );
        // simple matroids of positive rank vanish at t = 1
        for m in [u(2, 3), u(2, 4), families::complete_graph(4).unwrap()] {
            let chi_op = opposite_char_poly(&m).unwrap();
            let mut pt = BTreeMap::new();
            pt.insert(Variable::t(), BigRational::one());
            assert_eq!(chi_op.evaluate(&pt).unwrap(), BigRational::zero());
        }
    }

    #[test]
    fn opposite_char_poly_is_t2_evaluation() {
        // T^2(1-t, 1; 0, 0) = t^{rk} χop(1/t)
        for m in [u(1, 1), u(2, 3), u(2, 4), families::cycle_graph(4).unwrap()] {
            let t2 = chain_tutte(&m, 2, &opts()).unwrap().poly;
            let mut bindings = BTreeMap::new();
            bindings.insert(
                Variable::x(1),
                &LaurentPoly::one() - &LaurentPoly::variable(Variable::t()),
            );
            bindings.insert(Variable::x(2), LaurentPoly::one());
            bindings.insert(Variable::y(1), LaurentPoly::zero());
            bindings.insert(Variable::y(2), LaurentPoly::zero());
            let lhs = t2.substitute(&bindings).unwrap();

            let chi_op = opposite_char_poly(&m).unwrap();
            let mut reciprocal = BTreeMap::new();
            reciprocal.insert(
                Variable::t(),
                LaurentPoly::monomial(Monomial::var(Variable::t(), -1), BigInt::one()),
            );
            let rhs = &chi_op.substitute(&reciprocal).unwrap()
                * &LaurentPoly::monomial(
                    Monomial::var(Variable::t(), m.rank_m() as i32),
                    BigInt::one(),
                );
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn opposite_char_poly_recursion_agrees() {
        for m in [u(2, 3), u(2, 4), families::complete_graph(4).unwrap()] {
            assert_eq!(
                opposite_char_poly_recursive(&m).unwrap(),
                opposite_char_poly(&m).unwrap()
            );
        }
    }

    #[test]
    fn j_mobius_examples() {
        // a single flat: one flag, J = 1, corank 0
        assert_eq!(j_mobius_poly(&u(0, 1)).unwrap(), LaurentPoly::one());
        // the two-chain lattice, solved by hand
        assert_eq!(
            j_mobius_poly(&u(1, 1)).unwrap(),
            poly_t(&[(3, 1), (2, -1), (1, -1), (0, 1)])
        );
        // five flats, solved by the triangular system
        assert_eq!(
            j_mobius_poly(&u(2, 3)).unwrap(),
            poly_t(&[(6, 1), (5, -3), (4, -1), (3, 6), (2, -1), (1, -3), (0, 1)])
        );
    }

    #[test]
    fn ford_a_examples() {
        let m = u(2, 3);
        assert_eq!(ford_a(&m, 0).unwrap(), 0);
        assert_eq!(ford_a(&m, mask_of(&[0])).unwrap(), 0);
        assert_eq!(ford_a(&m, mask_of(&[0, 1, 2])).unwrap(), 1);
        let c = u(1, 1);
        assert_eq!(ford_a(&c, 1).unwrap(), 0);
    }

    #[test]
    fn ford_a_matches_boolean_mobius_inversion() {
        // a is the Boolean Möbius inversion of the nullity function:
        // a(A) = Σ_{B ⊆ A} (-1)^{|A|-|B|} (|B| - rk(B))
        for m in [u(2, 4), families::cycle_graph(4).unwrap(), u(1, 3)] {
            let table = ford_a_table(&m).unwrap();
            for a_mask in 0..=m.ground().full_mask() {
                let mut oracle = 0i64;
                for b in subset::submasks(a_mask) {
                    let sign = if (subset::card(a_mask) - subset::card(b)) % 2 == 0 {
                        1
                    } else {
                        -1
                    };
                    oracle += sign * (subset::card(b) as i64 - m.rank_unchecked(b) as i64);
                }
                assert_eq!(table[a_mask as usize], oracle);
            }
        }
    }

    #[test]
    fn expected_codim_examples() {
        for n in 0..=4 {
            assert_eq!(expected_codim(&families::boolean(n).unwrap()).unwrap(), 0, "B_{n}");
        }
        for m in [u(2, 3), u(2, 4), families::cycle_graph(4).unwrap()] {
            let direct = expected_codim(&m).unwrap();
            assert_eq!(expected_codim_via_tutte(&m, &opts()).unwrap(), direct);
            assert_eq!(expected_codim_recursive(&m).unwrap(), direct);
        }
    }

    #[test]
    fn ford_s_poly_examples() {
        // U_{1,1}: pairs (∅,∅) -> y, (∅,{e}) -> z, ({e},{e}) -> 1
        let got = ford_s_poly(&u(1, 1)).unwrap();
        let mut expect = LaurentPoly::zero();
        expect.add_term(Monomial::var(Variable::y(1), 1), BigInt::one());
        expect.add_term(Monomial::var(Variable::z(), 1), BigInt::one());
        expect.add_term(Monomial::one(), BigInt::one());
        assert_eq!(got, expect);

        // substitution identity, Laurent intermediates cancelling
        for m in [u(1, 2), u(2, 3), u(2, 4)] {
            assert_eq!(
                ford_s_from_chain_tutte(&m, &opts()).unwrap(),
                ford_s_poly(&m).unwrap()
            );
        }
    }

    #[test]
    fn ford_s_recursion() {
        // S_M = S_{M\a} + S_{M/a} + z * (pair sum over the ground set minus a)
        let m = u(2, 4);
        let a = 0usize;
        let a_bit = 1u64 << a;
        let lhs = ford_s_poly(&m).unwrap();
        let mut rhs = ford_s_poly(&m.delete(a_bit).unwrap()).unwrap();
        rhs.add_assign(&ford_s_poly(&m.contract(a_bit).unwrap()).unwrap());
        let rank_contract = (m.rank_m() - m.rank_unchecked(a_bit)) as i64;
        let rk_a = m.rank_unchecked(a_bit) as i64;
        let rest = m.ground().full_mask() & !a_bit;
        let mut correction = LaurentPoly::zero();
        for b in subset::submasks(rest) {
            let rk_b = m.rank_unchecked(b | a_bit) as i64 - rk_a;
            for a_sub in subset::submasks(b) {
                correction.add_term(
                    Monomial::from_pairs([
                        (
                            Variable::x(1),
                            (subset::card(a_sub) as i64 - m.rank_unchecked(a_sub) as i64) as i32,
                        ),
                        (Variable::y(1), (rank_contract - rk_b) as i32),
                        (Variable::z(), (subset::card(b) - subset::card(a_sub)) as i32 + 1),
                    ]),
                    BigInt::one(),
                );
            }
        }
        rhs.add_assign(&correction);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn g_invariant_examples() {
        let g = g_invariant(&u(1, 1), &opts()).unwrap();
        assert_eq!(g.counts.len(), 1);
        assert_eq!(g.counts[&vec![1u32]], BigInt::one());

        let g = g_invariant(&u(1, 2), &opts()).unwrap();
        assert_eq!(g.counts[&vec![1u32, 0]], BigInt::from(2));

        let g = g_invariant(&u(2, 3), &opts()).unwrap();
        assert_eq!(g.counts[&vec![1u32, 1, 0]], BigInt::from(6));
        assert_eq!(g.counts.len(), 1);

        // mass is n!, and every matroid rank vector is 0/1 with rk(M) ones
        for m in [u(2, 4), families::cycle_graph(4).unwrap()] {
            let g = g_invariant(&m, &opts()).unwrap();
            let mut mass = BigInt::one();
            for i in 1..=m.n() {
                mass *= BigInt::from(i);
            }
            assert_eq!(g.total_mass(), mass);
            for rv in g.counts.keys() {
                assert!(rv.iter().all(|&r| r <= 1));
                assert_eq!(rv.iter().sum::<u32>(), m.rank_m());
            }
        }

        let tight = EnumOptions { max_perms: 5, ..EnumOptions::serial() };
        assert!(matches!(
            g_invariant(&u(2, 4), &tight),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn g_from_top_tutte_agrees() {
        for m in [
            u(1, 2),
            u(2, 3),
            families::boolean(2).unwrap(),
            u(0, 1).direct_sum(&u(1, 2)).unwrap(),
        ] {
            assert_eq!(
                g_from_top_tutte(&m, &opts()).unwrap(),
                g_invariant(&m, &opts()).unwrap()
            );
        }
        // polymatroid rank vectors may exceed 1
        let p = Matroid::from_rank_table(1, &[0, 2]).unwrap();
        let g = g_invariant(&p, &opts()).unwrap();
        assert_eq!(g.counts[&vec![2u32]], BigInt::one());
        assert_eq!(g_from_top_tutte(&p, &opts()).unwrap(), g);
    }

    #[test]
    fn g_invariant_json_round_trip() {
        let g = g_invariant(&u(2, 3), &opts()).unwrap();
        let back = GInvariant::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn constant_evaluation_record() {
        for m in [
            u(2, 3),
            u(2, 4),
            u(0, 1).direct_sum(&u(2, 3)).unwrap(),
            families::cycle_graph(4).unwrap(),
        ] {
            for k in 1..=3 {
                let record = constant_evaluations(&m, k, &opts()).unwrap();
                assert!(record.all_agree(), "k={k}: {:?}", record);
            }
        }
    }

    #[test]
    fn boolean_all_twos_ones() {
        // T^k(2,…,2;1,…,1) = (k+1)^n on the free matroid
        for n in 1..=3usize {
            for k in 1..=3usize {
                let t = chain_tutte(&families::boolean(n).unwrap(), k, &opts()).unwrap();
                let got = evaluate_at_integers(&t, &vec![2; k], &vec![1; k]).unwrap();
                assert_eq!(got, BigInt::from((k as u64 + 1).pow(n as u32)));
            }
        }
    }

    #[test]
    fn witness_sides_differ() {
        let (lhs, rhs) = tutte_grothendieck_witness(&opts()).unwrap();
        assert_ne!(lhs, rhs);
    }
}
