//! Point counting for the two supported surface shapes over F_{p^k}, trace
//! extraction, and a persistent append-only count cache.
//!
//! Counting is the hot path. Points of projective space are enumerated in
//! the standard flag decomposition — charts (1,*,..,*), (0,1,*,..), ... —
//! and the enumeration index is split into contiguous chunks that are
//! counted independently and merged by addition, so the parallel and
//! sequential builds return identical numbers.

mod cache;

pub use cache::CountCache;

use crate::gfield::{FpK, MAX_ENUMERABLE_ORDER};
use crate::mpoly::{fnv1a, MultiPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

#[derive(Debug, thiserror::Error)]
pub enum CountError {
    #[error("characteristic 2 unsupported")]
    CharacteristicTwo,
    #[error("surface is invalid: {0}")]
    BadSurface(String),
    #[error(
        "resource budget exceeded: counting over F_{{{p}^{k}}} needs {needed} evaluations, budget is {budget}"
    )]
    BudgetExceeded {
        p: u64,
        k: u32,
        needed: u128,
        budget: u128,
    },
    #[error("field construction failed: {0}")]
    Field(#[from] crate::gfield::FieldError),
    #[error(
        "count {n} over F_{{{p}^{k}}} violates the Weil bound for a smooth K3 reduction (is {p} a good prime?)"
    )]
    WeilBoundViolated { p: u64, k: u32, n: u64 },
    #[error("cache I/O: {0}")]
    Cache(#[from] std::io::Error),
}

/// Default cap on elementary form evaluations per (p, k) counting call.
pub const DEFAULT_EVAL_BUDGET: u128 = 1_000_000_000;

/// A K3 surface given by explicit integral equations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Surface {
    /// A quartic form in X0..X3 cutting out a surface in P³.
    Quartic3 { form: MultiPoly },
    /// c·X3⁴ + f2(X0,X1,X2)·X3² + f4(X0,X1,X2) = 0 with ternary f2, f4.
    SpecialQuartic {
        c: BigInt,
        f2: MultiPoly,
        f4: MultiPoly,
    },
    /// The double cover w² = f6(X0,X1,X2) of P², f6 a ternary sextic.
    DoubleSextic { f6: MultiPoly },
}

impl Surface {
    pub fn quartic3(form: MultiPoly) -> Result<Surface, CountError> {
        if form.nvars() != 4 || form.homogeneous_degree() != Some(4) || form.is_zero() {
            return Err(CountError::BadSurface(
                "quartic3 needs a nonzero homogeneous quartic in X0..X3".into(),
            ));
        }
        Ok(Surface::Quartic3 { form })
    }

    pub fn special_quartic(c: BigInt, f2: MultiPoly, f4: MultiPoly) -> Result<Surface, CountError> {
        if c.is_zero() {
            return Err(CountError::BadSurface("special quartic needs c != 0".into()));
        }
        if f2.nvars() != 3 || (!f2.is_zero() && f2.homogeneous_degree() != Some(2)) {
            return Err(CountError::BadSurface(
                "f2 must be a ternary quadratic form (possibly zero)".into(),
            ));
        }
        if f4.nvars() != 3 || f4.is_zero() || f4.homogeneous_degree() != Some(4) {
            return Err(CountError::BadSurface(
                "f4 must be a nonzero ternary quartic form".into(),
            ));
        }
        Ok(Surface::SpecialQuartic { c, f2, f4 })
    }

    pub fn double_sextic(f6: MultiPoly) -> Result<Surface, CountError> {
        if f6.nvars() != 3 || f6.is_zero() || f6.homogeneous_degree() != Some(6) {
            return Err(CountError::BadSurface(
                "double sextic needs a nonzero ternary sextic form".into(),
            ));
        }
        Ok(Surface::DoubleSextic { f6 })
    }

    /// The quartic form in 4 variables cut out by a (special) quartic.
    /// For a `SpecialQuartic` this expands c·X3⁴ + f2·X3² + f4.
    pub fn quartic_form(&self) -> Option<MultiPoly> {
        match self {
            Surface::Quartic3 { form } => Some(form.clone()),
            Surface::SpecialQuartic { c, f2, f4 } => {
                let lift = |f: &MultiPoly| {
                    MultiPoly::from_terms(
                        4,
                        f.terms().map(|(m, coef)| {
                            let mut e = m.exps().to_vec();
                            e.push(0);
                            (e, coef.clone())
                        }),
                    )
                };
                let x3 = MultiPoly::var(4, 3).unwrap();
                let form = x3
                    .pow(4)
                    .scale(c)
                    .add(&lift(f2).mul(&x3.pow(2)).unwrap())
                    .unwrap()
                    .add(&lift(f4))
                    .unwrap();
                Some(form)
            }
            Surface::DoubleSextic { .. } => None,
        }
    }

    /// Stable identity of the surface for cache keys: FNV-1a over the kind
    /// tag and the canonical bytes of the defining forms.
    pub fn canonical_hash(&self) -> u64 {
        let mut bytes = Vec::new();
        match self {
            Surface::Quartic3 { form } => {
                bytes.extend_from_slice(b"quartic3|");
                bytes.extend_from_slice(&form.canonical_bytes());
            }
            Surface::SpecialQuartic { c, f2, f4 } => {
                bytes.extend_from_slice(b"special_quartic|");
                bytes.extend_from_slice(c.to_string().as_bytes());
                bytes.push(b'|');
                bytes.extend_from_slice(&f2.canonical_bytes());
                bytes.push(b'|');
                bytes.extend_from_slice(&f4.canonical_bytes());
            }
            Surface::DoubleSextic { f6 } => {
                bytes.extend_from_slice(b"double_sextic|");
                bytes.extend_from_slice(&f6.canonical_bytes());
            }
        }
        fnv1a(&bytes)
    }
}

/// Per-prime record of counts, traces and (when determined) det Frob on H²(1).
#[derive(Debug, Clone)]
pub struct FrobeniusData {
    pub p: u64,
    /// k -> number of points over F_{p^k}.
    pub counts: BTreeMap<u32, u64>,
    /// k -> t_k = (N_k - 1 - p^{2k}) / p^k, exactly. The Weil bound gives
    /// |t_k| <= 22; t_k need not be an integer (its denominator divides p^k).
    pub traces: BTreeMap<u32, BigRational>,
    pub det_h2: Option<i8>,
}

/// Execution knobs for a counting call.
#[derive(Debug, Clone)]
pub struct CountOptions {
    /// Cap on elementary evaluations (points enumerated) per (p, k) call.
    pub eval_budget: u128,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            eval_budget: DEFAULT_EVAL_BUDGET,
        }
    }
}

/// Exact number of projective points of the surface over F_{p^k}.
pub fn count_points(surface: &Surface, p: u64, k: u32) -> Result<u64, CountError> {
    count_points_with(surface, p, k, &CountOptions::default())
}

pub fn count_points_with(
    surface: &Surface,
    p: u64,
    k: u32,
    opts: &CountOptions,
) -> Result<u64, CountError> {
    if p == 2 {
        return Err(CountError::CharacteristicTwo);
    }
    check_budget(surface, p, k, opts)?;
    let field = FpK::new(p, k)?;
    match surface {
        Surface::Quartic3 { .. } | Surface::SpecialQuartic { .. } => {
            let form = surface.quartic_form().unwrap();
            Ok(count_projective_zeros(&field, &form))
        }
        Surface::DoubleSextic { f6 } => Ok(count_double_cover(&field, f6)),
    }
}

/// The trace t_k = (N_k - 1 - q²)/q on H²(1), with the Weil bound check.
pub fn trace_from_count(p: u64, k: u32, n: u64) -> Result<BigRational, CountError> {
    let q = BigInt::from(p).pow(k);
    let t = BigRational::new(BigInt::from(n) - 1 - &q * &q, q);
    if t.abs() > BigRational::from_integer(BigInt::from(22)) {
        return Err(CountError::WeilBoundViolated { p, k, n });
    }
    Ok(t)
}

/// Counts over F_{p^k} for k = 1..=kmax, reading and filling `cache` when
/// one is supplied.
pub fn traces(
    surface: &Surface,
    p: u64,
    kmax: u32,
    opts: &CountOptions,
    cache: Option<&CountCache>,
) -> Result<FrobeniusData, CountError> {
    let hash = surface.canonical_hash();
    let mut counts = BTreeMap::new();
    let mut trace_map = BTreeMap::new();
    for k in 1..=kmax {
        let n = match cache.and_then(|c| c.lookup(hash, p, k)) {
            Some(n) => n,
            None => {
                let n = count_points_with(surface, p, k, opts)?;
                if let Some(c) = cache {
                    c.append(hash, p, k, n)?;
                }
                n
            }
        };
        counts.insert(k, n);
        trace_map.insert(k, trace_from_count(p, k, n)?);
    }
    Ok(FrobeniusData {
        p,
        counts,
        traces: trace_map,
        det_h2: None,
    })
}

fn check_budget(surface: &Surface, p: u64, k: u32, opts: &CountOptions) -> Result<(), CountError> {
    let q = (0..k).try_fold(1u64, |acc, _| acc.checked_mul(p));
    let cost = match q {
        Some(q) if q <= MAX_ENUMERABLE_ORDER => {
            let qq = q as u128;
            match surface {
                Surface::DoubleSextic { .. } => qq * qq + qq + 1,
                _ => qq * qq * qq + qq * qq + qq + 1,
            }
        }
        _ => u128::MAX,
    };
    if cost > opts.eval_budget {
        return Err(CountError::BudgetExceeded {
            p,
            k,
            needed: cost,
            budget: opts.eval_budget,
        });
    }
    Ok(())
}

/// A form compiled for fast index-based evaluation over a fixed field:
/// discrete-log multiplication plus one power table per occurring exponent.
struct CompiledForm {
    /// (coefficient as element index, exponent vector).
    terms: Vec<(u32, Vec<u16>)>,
    /// pow[e][elem_idx] = index of elem^e (entry 0 of the outer vec unused).
    pow: Vec<Vec<u32>>,
    log: Vec<u32>,
    exp: Vec<u32>,
    q: u64,
    p: u64,
    k: u32,
}

impl CompiledForm {
    fn build(field: &FpK, form: &MultiPoly) -> CompiledForm {
        let q = field.order();
        let (log, exp) = log_tables(field);
        let max_e = form
            .terms()
            .flat_map(|(m, _)| m.exps().iter().copied())
            .max()
            .unwrap_or(0);
        let mut pow = vec![Vec::new(); max_e as usize + 1];
        for (e, table) in pow.iter_mut().enumerate().skip(1) {
            *table = (0..q)
                .map(|i| {
                    if i == 0 {
                        0u32
                    } else {
                        let l = log[i as usize] as u64;
                        exp[(l * e as u64 % (q - 1)) as usize]
                    }
                })
                .collect();
        }
        let terms = form
            .terms()
            .map(|(m, c)| {
                let cp = c.mod_floor(&BigInt::from(field.p())).to_u64().unwrap();
                let idx = field.to_index(&field.scalar(cp)) as u32;
                (idx, m.exps().to_vec())
            })
            .filter(|(c, _)| *c != 0)
            .collect();
        CompiledForm {
            terms,
            pow,
            log,
            exp,
            q,
            p: field.p(),
            k: field.k(),
        }
    }

    #[inline]
    fn mul_idx(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] as u64 + self.log[b as usize] as u64;
        let s = if s >= self.q - 1 { s - (self.q - 1) } else { s };
        self.exp[s as usize]
    }

    /// Digit-wise addition of two element indices (base-p vectors).
    #[inline]
    fn add_idx(&self, a: u32, b: u32) -> u32 {
        if b == 0 {
            return a;
        }
        if a == 0 {
            return b;
        }
        if self.k == 1 {
            let s = a as u64 + b as u64;
            return if s >= self.p { (s - self.p) as u32 } else { s as u32 };
        }
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut mult = 1u64;
        for _ in 0..self.k {
            let s = (a % self.p + b % self.p) % self.p;
            out += s * mult;
            mult *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out as u32
    }

    /// Evaluates the form at a point of element indices.
    #[inline]
    fn eval(&self, point: &[u32]) -> u32 {
        let mut acc = 0u32;
        for (coef, exps) in &self.terms {
            let mut t = *coef;
            for (x, &e) in point.iter().zip(exps) {
                if e > 0 {
                    t = self.mul_idx(t, self.pow[e as usize][*x as usize]);
                    if t == 0 {
                        break;
                    }
                }
            }
            acc = self.add_idx(acc, t);
        }
        acc
    }
}

/// Builds discrete log/exp tables for F_q* over a deterministic generator.
fn log_tables(field: &FpK) -> (Vec<u32>, Vec<u32>) {
    let q = field.order();
    let mut factors = Vec::new();
    let mut m = q - 1;
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    let mut g_idx = 2u64;
    let g = loop {
        assert!(g_idx < q, "no generator found: field construction is broken");
        let g = field.from_index(g_idx);
        if !field.is_zero(&g)
            && factors
                .iter()
                .all(|&r| field.pow(&g, (q - 1) / r) != field.one())
        {
            break g;
        }
        g_idx += 1;
    };
    let mut log = vec![0u32; q as usize];
    let mut exp = vec![0u32; (q - 1) as usize];
    let mut acc = field.one();
    for i in 0..(q - 1) {
        let idx = field.to_index(&acc);
        exp[i as usize] = idx as u32;
        log[idx as usize] = i as u32;
        acc = field.mul(&acc, &g);
    }
    (log, exp)
}

/// Splits 0..total into fixed-size chunks and sums `count_chunk` over them,
/// in parallel when the `parallel` feature is enabled. Chunk bounds do not
/// depend on the thread count and the merge is plain addition, so parallel
/// and sequential runs agree exactly.
fn chunked_sum(total: u64, count_chunk: impl Fn(u64, u64) -> u64 + Sync) -> u64 {
    let chunk = 1u64 << 14;
    let ranges: Vec<(u64, u64)> = (0..total.div_ceil(chunk))
        .map(|i| (i * chunk, ((i + 1) * chunk).min(total)))
        .collect();
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        ranges
            .par_iter()
            .map(|&(lo, hi)| count_chunk(lo, hi))
            .sum()
    }
    #[cfg(not(feature = "parallel"))]
    {
        ranges.iter().map(|&(lo, hi)| count_chunk(lo, hi)).sum()
    }
}

/// Number of points of V(form) in P^{n-1}(F_q) for a form in n variables,
/// by chart enumeration.
pub fn count_projective_zeros(field: &FpK, form: &MultiPoly) -> u64 {
    let nvars = form.nvars();
    let compiled = CompiledForm::build(field, form);
    let q = field.order();
    let one_idx = field.to_index(&field.one()) as u32;
    let mut total = 0u64;
    for chart in 0..nvars {
        let free = nvars - chart - 1;
        let points = q.pow(free as u32);
        total += chunked_sum(points, |lo, hi| {
            let mut point = vec![0u32; nvars];
            point[chart] = one_idx;
            let mut count = 0u64;
            for mut idx in lo..hi {
                for slot in point.iter_mut().skip(chart + 1) {
                    *slot = (idx % q) as u32;
                    idx /= q;
                }
                if compiled.eval(&point) == 0 {
                    count += 1;
                }
            }
            count
        });
    }
    total
}

/// Points of the double cover w² = f6 over P²(F_q): each P in P² contributes
/// 2 if f6(P) is a nonzero square, 1 if f6(P) = 0, and 0 otherwise.
pub fn count_double_cover(field: &FpK, f6: &MultiPoly) -> u64 {
    let compiled = CompiledForm::build(field, f6);
    let q = field.order();
    let one_idx = field.to_index(&field.one()) as u32;
    let mut total = 0u64;
    for chart in 0..3usize {
        let free = 3 - chart - 1;
        let points = q.pow(free as u32);
        total += chunked_sum(points, |lo, hi| {
            let mut point = vec![0u32; 3];
            point[chart] = one_idx;
            let mut count = 0u64;
            for mut idx in lo..hi {
                for slot in point.iter_mut().skip(chart + 1) {
                    *slot = (idx % q) as u32;
                    idx /= q;
                }
                let v = compiled.eval(&point);
                count += if v == 0 {
                    1
                } else if compiled.log[v as usize] % 2 == 0 {
                    // Nonzero square: even discrete log (q odd).
                    2
                } else {
                    0
                };
            }
            count
        });
    }
    total
}

#[cfg(test)]
mod tests;
