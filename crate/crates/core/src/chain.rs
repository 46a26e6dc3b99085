//! Chain Whitney and chain Tutte polynomials, their split-polynomial
//! recursion, and the universal chain polynomial on matroid polytopes.
//!
//! A k-chain is a weakly nested sequence `S_1 ⊆ … ⊆ S_k` of ground-set
//! subsets; there are `(k+1)^n` of them. Enumeration encodes a chain as a
//! level function: element `e` has level `ℓ(e) = #{i : e ∈ S_i}` and chains
//! are walked in mixed-radix order of the level digits, which partitions the
//! index space into contiguous per-worker ranges. Workers accumulate private
//! sparse maps that merge associatively, so the result is identical for any
//! worker count.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::poly::{LaurentPoly, Monomial, Variable};
use crate::subset;

/// Budgets and worker count for the exponential enumerations.
#[derive(Clone, Debug)]
pub struct EnumOptions {
    /// Cap on the number of enumerated chains, `(k+1)^n` for direct
    /// computation. Exceeding it fails fast with `BudgetExceeded`.
    pub max_chains: u64,
    /// Cap on the number of enumerated permutations (`n!`) in the
    /// G-invariant.
    pub max_perms: u64,
    /// Worker threads; the output is bit-identical for any value.
    pub threads: usize,
}

impl Default for EnumOptions {
    fn default() -> EnumOptions {
        EnumOptions {
            max_chains: 1 << 30,
            max_perms: 362_880, // 9!
            threads: std::thread::available_parallelism().map(|c| c.get()).unwrap_or(1),
        }
    }
}

impl EnumOptions {
    /// Single-threaded with default budgets.
    pub fn serial() -> EnumOptions {
        EnumOptions { threads: 1, ..EnumOptions::default() }
    }

    pub(crate) fn check_chains(&self, needed: u128) -> Result<u64> {
        if needed > self.max_chains as u128 {
            return Err(Error::BudgetExceeded { needed, limit: self.max_chains });
        }
        Ok(needed as u64)
    }
}

/// Which variable family a chain polynomial lives in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ChainForm {
    /// `W^k` in the families `a_i`, `b_i`.
    Whitney,
    /// `T^k` in the families `x_i`, `y_i`.
    Tutte,
    /// The universal form in the families `u_i`, `v_i`.
    Universal,
}

impl ChainForm {
    pub fn name(self) -> &'static str {
        match self {
            ChainForm::Whitney => "whitney",
            ChainForm::Tutte => "tutte",
            ChainForm::Universal => "universal",
        }
    }
}

/// A chain polynomial together with the data it was computed from.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainTuttePoly {
    pub k: usize,
    pub n: usize,
    pub matroid_rank: u32,
    pub form: ChainForm,
    pub poly: LaurentPoly,
}

fn pow_u128(base: u64, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

/// Merge per-worker accumulators over contiguous ranges of `0..total`.
fn enumerate_merge(
    total: u64,
    threads: usize,
    worker: impl Fn(u64, u64) -> BTreeMap<Monomial, BigInt> + Sync,
) -> LaurentPoly {
    let threads = threads.clamp(1, 64);
    let chunks = if total < 2048 || threads == 1 {
        1
    } else {
        threads.min((total / 1024) as usize).max(1)
    };
    let mut maps: Vec<BTreeMap<Monomial, BigInt>> = Vec::with_capacity(chunks);
    if chunks == 1 {
        maps.push(worker(0, total));
    } else {
        std::thread::scope(|scope| {
            let mut handles = Vec::with_capacity(chunks);
            for t in 0..chunks {
                let lo = total / chunks as u64 * t as u64
                    + (total % chunks as u64).min(t as u64);
                let hi = total / chunks as u64 * (t as u64 + 1)
                    + (total % chunks as u64).min(t as u64 + 1);
                let worker = &worker;
                handles.push(scope.spawn(move || worker(lo, hi)));
            }
            for h in handles {
                maps.push(h.join().expect("enumeration worker panicked"));
            }
        });
    }
    let mut out = LaurentPoly::zero();
    for map in maps {
        for (m, c) in map {
            out.add_term(m, c);
        }
    }
    out
}

/// The k-th chain Whitney rank generating polynomial
/// `W^k = Σ_chains Π_i a_i^(rk(M)-rk(S_i)) b_i^(|S_i|-rk(S_i))`.
/// Polymatroids are allowed; their `b` exponents may be negative.
pub fn chain_whitney(m: &Matroid, k: usize, opts: &EnumOptions) -> Result<ChainTuttePoly> {
    let n = m.n();
    if k == 0 {
        return Ok(ChainTuttePoly {
            k: 0,
            n,
            matroid_rank: m.rank_m(),
            form: ChainForm::Whitney,
            poly: LaurentPoly::one(),
        });
    }
    let total = opts.check_chains(pow_u128(k as u64 + 1, n))?;
    let rank_m = m.rank_m() as i64;

    let poly = enumerate_merge(total, opts.threads, |lo, hi| {
        let base = k as u64 + 1;
        let mut digits = vec![0u64; n];
        let mut masks = vec![0u64; k];
        let mut idx = lo;
        for (e, d) in digits.iter_mut().enumerate() {
            *d = (lo / base.pow(e as u32)) % base;
        }
        for (i, mask) in masks.iter_mut().enumerate() {
            // S_{i+1} holds the elements of level >= k - i
            let lvl = (k - i) as u64;
            *mask = digits
                .iter()
                .enumerate()
                .filter(|&(_, &d)| d >= lvl)
                .fold(0u64, |acc, (e, _)| acc | (1 << e));
        }
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        while idx < hi {
            let mut pairs: Vec<(Variable, i32)> = Vec::with_capacity(2 * k);
            for (i, &mask) in masks.iter().enumerate() {
                let r = m.rank_unchecked(mask) as i64;
                let ea = rank_m - r;
                if ea != 0 {
                    pairs.push((Variable::a(i as u32 + 1), ea as i32));
                }
            }
            for (i, &mask) in masks.iter().enumerate() {
                let r = m.rank_unchecked(mask) as i64;
                let eb = subset::card(mask) as i64 - r;
                if eb != 0 {
                    pairs.push((Variable::b(i as u32 + 1), eb as i32));
                }
            }
            let mono = Monomial::from_pairs(pairs);
            acc.entry(mono)
                .and_modify(|c| *c += 1)
                .or_insert_with(BigInt::one);

            idx += 1;
            if idx >= hi {
                break;
            }
            // odometer step
            let mut e = 0;
            loop {
                digits[e] += 1;
                if digits[e] < base {
                    // element e enters S at index k - level
                    masks[k - digits[e] as usize] |= 1 << e;
                    break;
                }
                digits[e] = 0;
                for mask in masks.iter_mut() {
                    *mask &= !(1 << e);
                }
                e += 1;
            }
        }
        acc
    });

    Ok(ChainTuttePoly { k, n, matroid_rank: m.rank_m(), form: ChainForm::Whitney, poly })
}

/// Bindings `a_i -> x_i - 1`, `b_i -> y_i - 1` for `i = 1..=k`.
fn whitney_to_tutte_bindings(k: usize) -> BTreeMap<Variable, LaurentPoly> {
    let mut bindings = BTreeMap::new();
    for i in 1..=k as u32 {
        bindings.insert(Variable::a(i), LaurentPoly::var_minus_one(Variable::x(i)));
        bindings.insert(Variable::b(i), LaurentPoly::var_minus_one(Variable::y(i)));
    }
    bindings
}

/// The k-th chain Tutte polynomial `T^k = W^k((x_i - 1); (y_i - 1))`,
/// fully expanded. A polymatroid whose `W^k` has negative `b` exponents has
/// no polynomial `T^k`; that case is reported as unsupported.
pub fn chain_tutte(m: &Matroid, k: usize, opts: &EnumOptions) -> Result<ChainTuttePoly> {
    let w = chain_whitney(m, k, opts)?;
    let poly = w
        .poly
        .substitute(&whitney_to_tutte_bindings(k))
        .map_err(|e| match e {
            Error::NonUnitSubstitution(_) => Error::Unsupported(
                "this polymatroid has subsets with |S| < rk(S); its chain Tutte \
                 polynomial is not a polynomial"
                    .into(),
            ),
            other => other,
        })?;
    Ok(ChainTuttePoly { poly, form: ChainForm::Tutte, ..w })
}

/// The universal chain polynomial on the matroid polytope:
/// the sum over chains `A_1 ⊆ … ⊆ A_k = A` (top pinned to the ground set)
/// of `Π_i u_i^(|A_i - A_{i-1}|) v_i^(rk(A_i) - rk(A_{i-1}))` with `A_0 = ∅`.
pub fn universal_chain_tutte(m: &Matroid, k: usize, opts: &EnumOptions) -> Result<ChainTuttePoly> {
    let n = m.n();
    if k == 0 {
        // no chain has A_0 = ∅ = A_k = ground unless the ground set is empty
        let poly = if n == 0 { LaurentPoly::one() } else { LaurentPoly::zero() };
        return Ok(ChainTuttePoly {
            k,
            n,
            matroid_rank: m.rank_m(),
            form: ChainForm::Universal,
            poly,
        });
    }
    let total = opts.check_chains(pow_u128(k as u64, n))?;

    let poly = enumerate_merge(total, opts.threads, |lo, hi| {
        let base = k as u64;
        let mut digits = vec![0u64; n];
        let mut masks = vec![0u64; k];
        for (e, d) in digits.iter_mut().enumerate() {
            *d = (lo / base.pow(e as u32)) % base;
        }
        for (i, mask) in masks.iter_mut().enumerate() {
            // A_{i+1} holds the elements with digit <= i (level = digit + 1)
            *mask = digits
                .iter()
                .enumerate()
                .filter(|&(_, &d)| d <= i as u64)
                .fold(0u64, |acc, (e, _)| acc | (1 << e));
        }
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        let mut idx = lo;
        while idx < hi {
            let mut pairs: Vec<(Variable, i32)> = Vec::with_capacity(2 * k);
            let mut prev_mask = 0u64;
            let mut prev_rank = 0i64;
            for (i, &mask) in masks.iter().enumerate() {
                let eu = (subset::card(mask) - subset::card(prev_mask)) as i32;
                if eu != 0 {
                    pairs.push((Variable::u(i as u32 + 1), eu));
                }
                prev_mask = mask;
                let r = m.rank_unchecked(mask) as i64;
                let ev = (r - prev_rank) as i32;
                if ev != 0 {
                    pairs.push((Variable::v(i as u32 + 1), ev));
                }
                prev_rank = r;
            }
            let mono = Monomial::from_pairs(pairs);
            acc.entry(mono)
                .and_modify(|c| *c += 1)
                .or_insert_with(BigInt::one);

            idx += 1;
            if idx >= hi {
                break;
            }
            let mut e = 0;
            loop {
                digits[e] += 1;
                if digits[e] < base {
                    // element e leaves A_{digit}
                    masks[digits[e] as usize - 1] &= !(1 << e);
                    break;
                }
                digits[e] = 0;
                for mask in masks.iter_mut().take(k - 1) {
                    *mask |= 1 << e;
                }
                e += 1;
            }
        }
        acc
    });

    Ok(ChainTuttePoly { k, n, matroid_rank: m.rank_m(), form: ChainForm::Universal, poly })
}

/// The split chain Tutte polynomial `sT^{k,j}` at element `a`. The boundary
/// cases are the minors' chain Tutte polynomials: `sT^{k,0} = T^k_{M/a}`
/// and `sT^{k,k} = T^k_{M\a}`. For `0 < j < k` it is the sum over chains
/// `(S_i)` of length `k-j` in the ground set minus `a` of
/// `T^j_{M|S_1} · Π_i (x_{i+j}-1)^... (y_{i+j}-1)^... · Π_{i<=j} (x_i-1)^(rk(M/S_1))`.
pub fn split_chain_tutte(
    m: &Matroid,
    a: usize,
    k: usize,
    j: usize,
    opts: &EnumOptions,
) -> Result<LaurentPoly> {
    if a >= m.n() {
        return Err(Error::ElementOutOfRange { element: a, n: m.n() });
    }
    if j > k {
        return Err(Error::InvalidParameters(format!(
            "split index j={j} exceeds chain length k={k}"
        )));
    }
    let a_bit = 1u64 << a;
    if j == 0 {
        return Ok(chain_tutte(&m.contract(a_bit)?, k, opts)?.poly);
    }
    if j == k {
        return Ok(chain_tutte(&m.delete(a_bit)?, k, opts)?.poly);
    }
    split_middle(m, a, k, j, opts)
}

/// The middle terms `1 <= j <= k-1` of the split decomposition.
fn split_middle(
    m: &Matroid,
    a: usize,
    k: usize,
    j: usize,
    opts: &EnumOptions,
) -> Result<LaurentPoly> {
    let n = m.n();
    let a_bit = 1u64 << a;
    let others: Vec<usize> = (0..n).filter(|&e| e != a).collect();
    let len = k - j; // chain length over the ground set minus a
    let total = opts.check_chains(pow_u128(len as u64 + 1, others.len()))?;

    let rank_m = m.rank_m() as i64;
    let rk_a = m.rank_unchecked(a_bit) as i64;
    let rank_contract = rank_m - rk_a; // rk(M/a)

    // Group the chain sum by S_1, accumulating the Whitney-form factor in
    // the shifted variables a_{j+1}..a_k, b_{j+1}..b_k.
    let mut groups: HashMap<u64, LaurentPoly> = HashMap::new();
    let base = len as u64 + 1;
    let mut digits = vec![0u64; others.len()];
    let mut masks = vec![0u64; len];
    let mut idx = 0u64;
    while idx < total {
        let mut pairs: Vec<(Variable, i32)> = Vec::with_capacity(2 * len);
        for (i, &mask) in masks.iter().enumerate() {
            let r = (m.rank_unchecked(mask | a_bit) as i64) - rk_a; // rk_{M/a}(S_i)
            let ea = rank_contract - r;
            if ea != 0 {
                pairs.push((Variable::a((i + j) as u32 + 1), ea as i32));
            }
        }
        for (i, &mask) in masks.iter().enumerate() {
            let r = (m.rank_unchecked(mask | a_bit) as i64) - rk_a;
            let eb = subset::card(mask) as i64 - r;
            if eb != 0 {
                pairs.push((Variable::b((i + j) as u32 + 1), eb as i32));
            }
        }
        groups
            .entry(masks[0])
            .or_insert_with(LaurentPoly::zero)
            .add_term(Monomial::from_pairs(pairs), BigInt::one());

        idx += 1;
        if idx >= total {
            break;
        }
        let mut e = 0;
        loop {
            digits[e] += 1;
            if digits[e] < base {
                masks[len - digits[e] as usize] |= 1 << others[e];
                break;
            }
            digits[e] = 0;
            for mask in masks.iter_mut() {
                *mask &= !(1 << others[e]);
            }
            e += 1;
        }
    }

    let bindings = whitney_to_tutte_bindings(k);
    let mut restriction_tutte: HashMap<u64, LaurentPoly> = HashMap::new();
    let mut x_block: HashMap<i64, LaurentPoly> = HashMap::new();
    let mut result = LaurentPoly::zero();
    for (s1, whitney_part) in groups {
        let t_j = match restriction_tutte.get(&s1) {
            Some(p) => p.clone(),
            None => {
                let p = chain_tutte(&m.restrict(s1)?, j, opts)?.poly;
                restriction_tutte.insert(s1, p.clone());
                p
            }
        };
        let exp = rank_m - m.rank_unchecked(s1) as i64; // rk(M/S_1)
        let block = match x_block.get(&exp) {
            Some(p) => p.clone(),
            None => {
                let mut p = LaurentPoly::one();
                for i in 1..=j as u32 {
                    p = &p * &LaurentPoly::var_minus_one(Variable::x(i)).pow(exp as u32);
                }
                x_block.insert(exp, p.clone());
                p
            }
        };
        let shifted = whitney_part.substitute(&bindings)?;
        result.add_assign(&(&(&t_j * &block) * &shifted));
    }
    Ok(result)
}

/// `T^k` through the generalized deletion/contraction recursion: split at
/// the smallest element that is neither a loop nor a coloop; when no such
/// element exists the matroid is a direct sum of loops and coloops and the
/// closed-form product applies.
pub fn chain_tutte_recursive(m: &Matroid, k: usize, opts: &EnumOptions) -> Result<ChainTuttePoly> {
    if m.is_polymatroid() {
        return Err(Error::PolymatroidUnsupported("chain_tutte_recursive"));
    }
    let poly = recursive_inner(m, k, opts)?;
    Ok(ChainTuttePoly { k, n: m.n(), matroid_rank: m.rank_m(), form: ChainForm::Tutte, poly })
}

fn recursive_inner(m: &Matroid, k: usize, opts: &EnumOptions) -> Result<LaurentPoly> {
    if k == 0 {
        return Ok(LaurentPoly::one());
    }
    let mut pivot = None;
    let mut loops = 0usize;
    for e in 0..m.n() {
        if m.is_loop(e)? {
            loops += 1;
        } else if !m.is_coloop(e)? {
            pivot = Some(e);
            break;
        }
    }
    let Some(a) = pivot else {
        let coloops = m.n() - loops;
        let lp = loop_chain_tutte(k);
        let cp = coloop_chain_tutte(k);
        return Ok(&lp.pow(loops as u32) * &cp.pow(coloops as u32));
    };
    let a_bit = 1u64 << a;
    let mut acc = recursive_inner(&m.contract(a_bit)?, k, opts)?; // j = 0
    for j in 1..k {
        acc.add_assign(&split_middle(m, a, k, j, opts)?);
    }
    acc.add_assign(&recursive_inner(&m.delete(a_bit)?, k, opts)?); // j = k
    Ok(acc)
}

/// Closed form of `T^k` for a single coloop: `1 + Σ_i Π_{j<=i} (x_j - 1)`.
pub fn coloop_chain_tutte(k: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    let mut prod = LaurentPoly::one();
    for i in 1..=k as u32 {
        prod = &prod * &LaurentPoly::var_minus_one(Variable::x(i));
        acc.add_assign(&prod);
    }
    acc
}

/// Closed form of `T^k` for a single loop: `1 + Σ_m Π_{i>=m} (y_i - 1)`.
pub fn loop_chain_tutte(k: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    let mut prod = LaurentPoly::one();
    for i in (1..=k as u32).rev() {
        prod = &prod * &LaurentPoly::var_minus_one(Variable::y(i));
        acc.add_assign(&prod);
    }
    acc
}

/// Specialize `T^{k'}` down to `T^k`, `k <= k'`. The opposite direction is
/// not supported.
///
/// Setting the trailing variables to 2 alone does not work: every k-prefix
/// chain is then counted once per extension above its top set, which is
/// `c^(n - |S_k|)` times with `c = k' - k + 1` (for one coloop,
/// `T^2(x,2;y,2) = 2x - 1`, not `T^1 = x`). Splitting the weight as
/// `c^(n-rk) c^(rk - rk S_k) c^(-(|S_k| - rk S_k))` shows the exact
/// relation is
/// `T^k = c^(rk-n) T^{k'}(x_1,…,x_{k-1}, 1+(x_k-1)/c, 2,…,2;
///                        y_1,…,y_{k-1}, 1+c(y_k-1), 2,…,2)`.
pub fn specialize_down(top: &ChainTuttePoly, k: usize) -> Result<ChainTuttePoly> {
    if top.form != ChainForm::Tutte {
        return Err(Error::Unsupported(format!(
            "specialize_down expects the Tutte form, got {}",
            top.form.name()
        )));
    }
    if k > top.k {
        return Err(Error::Unsupported(format!(
            "cannot specialize T^{} up to level {k}",
            top.k
        )));
    }
    let result = |poly| ChainTuttePoly {
        k,
        n: top.n,
        matroid_rank: top.matroid_rank,
        form: ChainForm::Tutte,
        poly,
    };
    if k == top.k {
        return Ok(result(top.poly.clone()));
    }
    if k == 0 {
        return Ok(result(LaurentPoly::one()));
    }
    let c = BigInt::from(top.k - k + 1);
    let xk = Variable::x(k as u32);
    let yk = Variable::y(k as u32);

    // trailing variables to 2, y_k to 1 + c (y_k - 1)
    let mut bindings = BTreeMap::new();
    for i in (k + 1)..=top.k {
        bindings.insert(Variable::x(i as u32), LaurentPoly::constant(2));
        bindings.insert(Variable::y(i as u32), LaurentPoly::constant(2));
    }
    let mut y_scaled = LaurentPoly::one();
    y_scaled.add_assign(&(&LaurentPoly::var_minus_one(yk) * &LaurentPoly::constant(c.clone())));
    bindings.insert(yk, y_scaled);
    let step = top.poly.substitute(&bindings)?;

    // expose the (x_k - 1)-basis coefficients, rescale degree d by
    // c^(rk - n - d), then shift back
    let mut unshift = BTreeMap::new();
    unshift.insert(xk, &LaurentPoly::variable(xk) + &LaurentPoly::one());
    let shifted = step.substitute(&unshift)?;
    let offset = top.matroid_rank as i64 - top.n as i64;
    let mut rescaled = LaurentPoly::zero();
    for (mono, coeff) in shifted.terms() {
        let d = mono.exponent(xk) as i64;
        let e = offset - d;
        let new_coeff = if e >= 0 {
            let mut scale = BigInt::one();
            for _ in 0..e {
                scale *= &c;
            }
            coeff * scale
        } else {
            let mut scale = BigInt::one();
            for _ in 0..(-e) {
                scale *= &c;
            }
            let q = coeff / &scale;
            let r = coeff % &scale;
            if !num_traits::Zero::is_zero(&r) {
                return Err(Error::Domain(
                    "specialization rescaling did not divide exactly; the input is \
                     not a chain Tutte polynomial with the declared rank and size"
                        .into(),
                ));
            }
            q
        };
        rescaled.add_term(mono.clone(), new_coeff);
    }
    let mut shift_back = BTreeMap::new();
    shift_back.insert(xk, LaurentPoly::var_minus_one(xk));
    Ok(result(rescaled.substitute(&shift_back)?))
}

/// Verify the change of coordinates carrying the universal form onto the
/// chain Whitney polynomial: substituting
/// `u_i = Π_{j>=i} b_j`, `u_{k+1} = 1`,
/// `v_i = Π_{j>=i} b_j^{-1} · Π_{j<i} a_j`, `v_{k+1} = a_1 ⋯ a_k`
/// into the universal polynomial at level `k+1` must reproduce `W^k`
/// exactly, with every negative exponent cancelling.
pub fn universal_to_whitney_check(m: &Matroid, k: usize, opts: &EnumOptions) -> Result<bool> {
    let universal = universal_chain_tutte(m, k + 1, opts)?;
    let mut bindings = BTreeMap::new();
    for i in 1..=k {
        let u_pairs: Vec<(Variable, i32)> =
            (i..=k).map(|j| (Variable::b(j as u32), 1)).collect();
        bindings.insert(
            Variable::u(i as u32),
            LaurentPoly::monomial(Monomial::from_pairs(u_pairs), BigInt::one()),
        );
        let mut v_pairs: Vec<(Variable, i32)> =
            (i..=k).map(|j| (Variable::b(j as u32), -1)).collect();
        v_pairs.extend((1..i).map(|j| (Variable::a(j as u32), 1)));
        bindings.insert(
            Variable::v(i as u32),
            LaurentPoly::monomial(Monomial::from_pairs(v_pairs), BigInt::one()),
        );
    }
    bindings.insert(Variable::u(k as u32 + 1), LaurentPoly::one());
    let top_pairs: Vec<(Variable, i32)> = (1..=k).map(|j| (Variable::a(j as u32), 1)).collect();
    bindings.insert(
        Variable::v(k as u32 + 1),
        LaurentPoly::monomial(Monomial::from_pairs(top_pairs), BigInt::one()),
    );
    let substituted = universal.poly.substitute(&bindings)?;
    if substituted.has_negative_exponent() {
        return Err(Error::NegativeExponent(
            "universal-to-Whitney coordinate change left a negative exponent".into(),
        ));
    }
    let whitney = chain_whitney(m, k, opts)?;
    Ok(substituted == whitney.poly)
}

/// Evaluate a chain polynomial at constant integer values per index, e.g.
/// `T^2(2,1;1,2)`. `xs` and `ys` bind `x_i`/`y_i` (or `a_i`/`b_i`,
/// `u_i`/`v_i` according to the form).
pub fn evaluate_at_integers(p: &ChainTuttePoly, xs: &[i64], ys: &[i64]) -> Result<BigInt> {
    use num_rational::BigRational;
    if xs.len() < p.k || ys.len() < p.k {
        return Err(Error::InvalidParameters(format!(
            "need {} values per family, got {} and {}",
            p.k,
            xs.len(),
            ys.len()
        )));
    }
    type VarCtor = fn(u32) -> Variable;
    let (fx, fy): (VarCtor, VarCtor) = match p.form {
        ChainForm::Whitney => (Variable::a, Variable::b),
        ChainForm::Tutte => (Variable::x, Variable::y),
        ChainForm::Universal => (Variable::u, Variable::v),
    };
    let mut point = BTreeMap::new();
    for i in 0..p.k {
        point.insert(fx(i as u32 + 1), BigRational::from(BigInt::from(xs[i])));
        point.insert(fy(i as u32 + 1), BigRational::from(BigInt::from(ys[i])));
    }
    let value = p.poly.evaluate(&point)?;
    if !value.is_integer() {
        return Err(Error::Domain(format!(
            "expected an integer evaluation, got {value}"
        )));
    }
    Ok(value.to_integer())
}
