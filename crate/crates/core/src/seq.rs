//! Sequences in `[0,1]`, the running join `μ`, the clipped recursion `γ`, the
//! class `𝒞` of increasing sequences with `n`-th gap at most `2⁻ⁿ`, and the
//! composite `δ = lim ∘ γ ∘ μ`.
//!
//! A sequence is a finite prefix followed by one of two tails, both with exact
//! closed forms:
//!
//! * a constant tail `sₙ = t`;
//! * a dyadic ascent `sₙ = ℓ − 2^{1−n}`, which climbs towards `ℓ` without
//!   reaching it. `γ` produces these: on `(0,0,1,1,…)` it yields
//!   `0, 0, 1/2, 3/4, 7/8, …`.
//!
//! Both tails are closed under `μ` and `γ`, so `δ` is computed exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::quantale::{trunc_minus, Rat01};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("sequence is not in class C: {0}")]
    NotInClassC(String),
    #[error("sample {index} = {sample} is farther than 1/{} from the target {target}", .index + 1)]
    ApproximationBoundViolated {
        index: usize,
        sample: String,
        target: String,
    },
    #[error("samples run out before reaching precision 2^-{0}")]
    InsufficientSamples(u32),
    #[error("ascent to {limit} cannot start at index {start}: first value would be negative")]
    InvalidAscent { limit: Rat01, start: usize },
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Tail {
    Constant(Rat01),
    /// `sₙ = ℓ − 2^{1−n}` from the end of the prefix on.
    Ascent(Rat01),
}

/// An eventually closed-form sequence in `[0,1]`, kept in canonical form
/// (shortest prefix).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Seq01 {
    prefix: Vec<Rat01>,
    tail: Tail,
}

fn ratio(r: &Rat01) -> BigRational {
    r.as_ratio().clone()
}

/// `2^{-n}` as an unbounded rational; `n` may be negative.
fn pow2_neg(n: i64) -> BigRational {
    if n >= 0 {
        BigRational::new(BigInt::one(), BigInt::one() << n as usize)
    } else {
        BigRational::from_integer(BigInt::one() << (-n) as usize)
    }
}

/// Value at index `n` of the ascent with limit `limit`.
fn ascent_value(limit: &Rat01, n: usize) -> BigRational {
    ratio(limit) - pow2_neg(n as i64 - 1)
}

impl Seq01 {
    pub fn constant(t: Rat01) -> Self {
        Seq01 {
            prefix: Vec::new(),
            tail: Tail::Constant(t),
        }
    }

    pub fn new(prefix: Vec<Rat01>, tail: Rat01) -> Self {
        let mut s = Seq01 {
            prefix,
            tail: Tail::Constant(tail),
        };
        s.normalize();
        s
    }

    /// Prefix followed by `ℓ − 2^{1−n}`; the first tail value must be `≥ 0`.
    pub fn with_ascent(prefix: Vec<Rat01>, limit: Rat01) -> Result<Self, SeqError> {
        let start = prefix.len();
        if ascent_value(&limit, start) < BigRational::from_integer(0.into()) {
            return Err(SeqError::InvalidAscent { limit, start });
        }
        let mut s = Seq01 {
            prefix,
            tail: Tail::Ascent(limit),
        };
        s.normalize();
        Ok(s)
    }

    fn normalize(&mut self) {
        while let Some(last) = self.prefix.last() {
            let n = self.prefix.len() - 1;
            let absorbed = match &self.tail {
                Tail::Constant(t) => last == t,
                Tail::Ascent(l) => ratio(last) == ascent_value(l, n),
            };
            if !absorbed {
                break;
            }
            self.prefix.pop();
        }
    }

    pub fn prefix(&self) -> &[Rat01] {
        &self.prefix
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    /// The value the tail is constant at or climbs towards.
    pub fn tail_value(&self) -> &Rat01 {
        match &self.tail {
            Tail::Constant(t) | Tail::Ascent(t) => t,
        }
    }

    pub fn at(&self, n: usize) -> Rat01 {
        if n < self.prefix.len() {
            return self.prefix[n].clone();
        }
        match &self.tail {
            Tail::Constant(t) => t.clone(),
            Tail::Ascent(l) => {
                Rat01::from_ratio(ascent_value(l, n)).expect("ascent stays in [0,1]")
            }
        }
    }

    /// `sup_n sₙ`.
    pub fn sup(&self) -> Rat01 {
        self.prefix
            .iter()
            .fold(self.tail_value().clone(), |acc, v| acc.join(v))
    }

    /// `sₙ ≤ s'ₙ` for every `n`.
    pub fn pointwise_le(&self, other: &Seq01) -> bool {
        let m = self.prefix.len().max(other.prefix.len());
        if !(0..m).all(|n| self.at(n) <= other.at(n)) {
            return false;
        }
        match (&self.tail, &other.tail) {
            (Tail::Constant(a), Tail::Constant(b)) => a <= b,
            (Tail::Ascent(l), Tail::Constant(t)) => l <= t,
            (Tail::Constant(t), Tail::Ascent(l)) => ratio(t) <= ascent_value(l, m),
            (Tail::Ascent(a), Tail::Ascent(b)) => a <= b,
        }
    }

    /// `sup_n |sₙ − s'ₙ|`, exactly.
    pub fn sup_distance(&self, other: &Seq01) -> Rat01 {
        let m = self.prefix.len().max(other.prefix.len());
        let head = (0..m).fold(Rat01::zero(), |acc, n| {
            acc.join(&self.at(n).abs_diff(&other.at(n)))
        });
        let tail = match (&self.tail, &other.tail) {
            (Tail::Constant(a), Tail::Constant(b)) | (Tail::Ascent(a), Tail::Ascent(b)) => {
                a.abs_diff(b)
            }
            // ℓ − 2^{1−n} − t is increasing in n: the sup of its absolute
            // value sits at one of the two ends
            (Tail::Ascent(l), Tail::Constant(t)) | (Tail::Constant(t), Tail::Ascent(l)) => {
                self.at(m).abs_diff(&other.at(m)).join(&l.abs_diff(t))
            }
        };
        head.join(&tail)
    }
}

/// Running join `(u₀ ∨ … ∨ uₙ)ₙ`.
pub fn mu(s: &Seq01) -> Seq01 {
    let mut prefix = Vec::with_capacity(s.prefix.len());
    let mut running: Option<Rat01> = None;
    for v in &s.prefix {
        let next = match &running {
            Some(r) => r.join(v),
            None => v.clone(),
        };
        prefix.push(next.clone());
        running = Some(next);
    }
    match &s.tail {
        Tail::Constant(t) => {
            let t = running.map_or(t.clone(), |r| r.join(t));
            Seq01::new(prefix, t)
        }
        Tail::Ascent(l) => {
            let r = running.expect("an ascent always follows a nonempty prefix");
            if &r >= l {
                return Seq01::new(prefix, r);
            }
            // the ascent passes r after finitely many steps
            let mut n = prefix.len();
            while ascent_value(l, n) < ratio(&r) {
                prefix.push(r.clone());
                n += 1;
            }
            Seq01::with_ascent(prefix, l.clone()).expect("ascent start is nonnegative")
        }
    }
}

/// `v₀ = u₀`, `vₙ₊₁ = min(uₙ₊₁, vₙ + 2⁻ⁿ)`.
pub fn gamma(s: &Seq01) -> Seq01 {
    let step = |prev: &Rat01, n: usize, u: &Rat01| -> Rat01 {
        // v_{n+1} from v_n = prev and u_{n+1} = u
        let bound = ratio(prev) + pow2_neg(n as i64);
        if ratio(u) <= bound {
            u.clone()
        } else {
            Rat01::from_ratio(bound).expect("below u, hence in [0,1]")
        }
    };
    let mut out: Vec<Rat01> = Vec::new();
    for (n, u) in s.prefix.iter().enumerate() {
        let v = match out.last() {
            None => u.clone(),
            Some(prev) => step(prev, n - 1, u),
        };
        out.push(v);
    }
    let big_n = out.len();
    match &s.tail {
        Tail::Constant(t) => {
            let mut v = match out.last() {
                None => t.clone(),
                Some(prev) => step(prev, big_n - 1, t),
            };
            let mut n = big_n;
            // from here u_n = t; v_n either equals t, or climbs by 2^-n each
            // step with fixed overshoot v_n + 2^{1-n} − t
            loop {
                if &v == t {
                    return Seq01::new(out, t.clone());
                }
                let reach = ratio(&v) + pow2_neg(n as i64 - 1);
                if reach <= ratio(t) {
                    let limit = Rat01::from_ratio(reach).expect("at most t");
                    return Seq01::with_ascent(out, limit).expect("v_n is the first ascent value");
                }
                out.push(v.clone());
                v = step(&v, n, t);
                n += 1;
            }
        }
        Tail::Ascent(_) => {
            // v_N against u_N; afterwards v climbs in parallel to u, or stays on it
            let u_n = s.at(big_n);
            let v = step(out.last().expect("nonempty prefix"), big_n - 1, &u_n);
            let limit = Rat01::from_ratio(ratio(&v) + pow2_neg(big_n as i64 - 1))
                .expect("bounded by the input limit");
            Seq01::with_ascent(out, limit).expect("v_N is the first ascent value")
        }
    }
}

/// Increasing with `sₙ₊₁ − sₙ ≤ 2⁻ⁿ` for all `n`; returns the first violation.
fn class_c_violation(s: &Seq01) -> Option<String> {
    // past the prefix, constant tails have gap 0 and ascents gap exactly 2^-n
    for n in 0..s.prefix.len() {
        let (a, b) = (s.at(n), s.at(n + 1));
        if b < a {
            return Some(format!("decreases at index {n}: {a} > {b}"));
        }
        if ratio(&b) - ratio(&a) > pow2_neg(n as i64) {
            return Some(format!(
                "gap {} at index {n} exceeds 1/2^{n}",
                trunc_minus(&b, &a)
            ));
        }
    }
    None
}

pub fn in_class_c(s: &Seq01) -> bool {
    class_c_violation(s).is_none()
}

/// The limit of a sequence in `𝒞`. `precision` bounds the error of the result;
/// with closed-form tails the result is exact, so it is unused.
pub fn lim_seq(s: &Seq01, _precision: &Rat01) -> Result<Rat01, SeqError> {
    if let Some(why) = class_c_violation(s) {
        return Err(SeqError::NotInClassC(why));
    }
    Ok(s.tail_value().clone())
}

/// `δ = lim ∘ γ ∘ μ`.
pub fn delta(s: &Seq01) -> Rat01 {
    lim_seq(&gamma(&mu(s)), &Rat01::zero()).expect("γ∘μ lands in class C")
}

/// How the samples are pushed below the target before joining.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Shift {
    /// `ψₙ ⊖ (ψₙ ⊖ ψ)`: subtract only the sample's excess over the target,
    /// which the sampling bound keeps below `1/(n+1)`.
    #[default]
    Excess,
    /// `ψₙ ⊖ 1/(n+1)`, uniformly.
    Uniform,
}

/// Turns samples `ψₙ` with `|ψₙ − ψ| ≤ 1/(n+1)` into a sequence in `𝒞` whose
/// tail `t` satisfies `t ≤ ψ` and `ψ − t ≤ 2^{-k}`.
///
/// Steps: shift every sample below the target, take running joins, then pick
/// a subsequence `n₀ < n₁ < … < n_k` with `ψ − w_{nⱼ} ≤ 2^{-j}`, which bounds
/// the `j`-th gap by `2^{-j}`.
pub fn build_c_approximant(
    samples: &[Rat01],
    target: &Rat01,
    k: u32,
    shift: Shift,
) -> Result<Seq01, SeqError> {
    for (n, s) in samples.iter().enumerate() {
        let bound = BigRational::new(BigInt::one(), BigInt::from(n + 1));
        if ratio(&s.abs_diff(target)) > bound {
            return Err(SeqError::ApproximationBoundViolated {
                index: n,
                sample: s.to_string(),
                target: target.to_string(),
            });
        }
    }
    let shifted: Vec<Rat01> = samples
        .iter()
        .enumerate()
        .map(|(n, s)| match shift {
            Shift::Excess => trunc_minus(s, &trunc_minus(s, target)),
            Shift::Uniform => trunc_minus(
                s,
                &Rat01::from_ratio(BigRational::new(BigInt::one(), BigInt::from(n + 1)))
                    .expect("unit fraction"),
            ),
        })
        .collect();
    let joined = mu(&Seq01::new(
        shifted.clone(),
        shifted.last().cloned().unwrap_or_else(Rat01::zero),
    ));
    let mut picked = Vec::with_capacity(k as usize + 1);
    let mut next = 0usize;
    for j in 0..=k {
        let eps = Rat01::dyadic(j);
        let found = (next..samples.len()).find(|&n| trunc_minus(target, &joined.at(n)) <= eps);
        match found {
            Some(n) => {
                picked.push(joined.at(n));
                next = n + 1;
            }
            None => return Err(SeqError::InsufficientSamples(k)),
        }
    }
    let tail = picked.last().cloned().expect("k + 1 picks");
    Ok(Seq01::new(picked, tail))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rat01 {
        s.parse().unwrap()
    }

    fn seq(prefix: &[&str], tail: &str) -> Seq01 {
        Seq01::new(prefix.iter().map(|s| r(s)).collect(), r(tail))
    }

    #[test]
    fn canonical_form() {
        assert_eq!(seq(&["1/2", "1/2"], "1/2"), Seq01::constant(r("1/2")));
        let a = Seq01::with_ascent(vec![r("0"), r("0"), r("1/2")], r("1")).unwrap();
        let b = Seq01::with_ascent(vec![r("0"), r("0")], r("1")).unwrap();
        assert_eq!(a, b);
        assert_eq!(b.at(2), r("1/2"));
        assert_eq!(b.at(3), r("3/4"));
        assert!(Seq01::with_ascent(vec![], r("1")).is_err());
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu(&seq(&["1"], "0")), Seq01::constant(Rat01::one()));
        let inc = seq(&["0", "1/4", "1/2"], "3/4");
        assert_eq!(mu(&inc), inc);
        assert_eq!(mu(&Seq01::constant(r("1/3"))), Seq01::constant(r("1/3")));
        assert_eq!(
            mu(&seq(&["1/2", "0", "3/4"], "1/4")),
            seq(&["1/2", "1/2"], "3/4")
        );
    }

    #[test]
    fn mu_of_ascent() {
        // 3/4 then 0, 1/2, 3/4, 7/8, ...: joins stay at 3/4 until 7/8
        let s = Seq01::with_ascent(vec![r("3/4"), r("0")], r("1")).unwrap();
        let m = mu(&s);
        assert_eq!(m.at(1), r("3/4"));
        assert_eq!(m.at(3), r("3/4"));
        assert_eq!(m.at(4), r("7/8"));
        assert_eq!(m.tail(), &Tail::Ascent(r("1")));
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma(&Seq01::constant(r("2/3"))), Seq01::constant(r("2/3")));
        let g = gamma(&seq(&["0", "0"], "1"));
        let expected = ["0", "0", "1/2", "3/4", "7/8", "15/16"];
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(g.at(n), r(e), "index {n}");
        }
        assert_eq!(g.tail(), &Tail::Ascent(Rat01::one()));
        assert_eq!(gamma(&seq(&["1"], "0")), seq(&["1"], "0"));
    }

    #[test]
    fn gamma_reaches_constant_tail() {
        // 0, then 1/2 forever: v1 = min(1/2, 0 + 1) = 1/2
        assert_eq!(gamma(&seq(&["0"], "1/2")), seq(&["0"], "1/2"));
        // 0, 0, then 3/4: v2 = 1/2, v3 = min(3/4, 1/2 + 1/4) = 3/4
        assert_eq!(
            gamma(&seq(&["0", "0"], "3/4")),
            seq(&["0", "0", "1/2"], "3/4")
        );
        // 0, 0, then 7/8: 1/2, 3/4 (= 7/8 − 1/8 short of the ascent 1), then 7/8
        assert_eq!(
            gamma(&seq(&["0", "0"], "7/8")),
            seq(&["0", "0", "1/2", "3/4"], "7/8")
        );
    }

    #[test]
    fn class_c_examples() {
        assert!(in_class_c(&Seq01::constant(r("1/5"))));
        assert!(in_class_c(&seq(&["1/2"], "3/4")));
        assert!(!in_class_c(&seq(&["0", "0"], "1")));
        assert!(!in_class_c(&seq(&["1/2"], "0")));
        assert!(in_class_c(
            &Seq01::with_ascent(vec![r("0"), r("0")], r("1")).unwrap()
        ));
    }

    #[test]
    fn lim_examples() {
        let z = Rat01::zero();
        assert_eq!(lim_seq(&Seq01::constant(r("2/7")), &z).unwrap(), r("2/7"));
        assert_eq!(lim_seq(&seq(&["1/2"], "3/4"), &z).unwrap(), r("3/4"));
        assert_eq!(lim_seq(&seq(&["0", "1/2"], "3/4"), &z).unwrap(), r("3/4"));
        assert!(matches!(
            lim_seq(&seq(&["0", "0"], "1"), &z),
            Err(SeqError::NotInClassC(_))
        ));
    }

    #[test]
    fn delta_examples() {
        for u in Rat01::grid(8) {
            assert_eq!(delta(&Seq01::constant(u.clone())), u);
        }
        assert_eq!(delta(&seq(&["1/2"], "3/4")), r("3/4"));
        assert_eq!(delta(&seq(&["1"], "0")), Rat01::one());
        assert_eq!(delta(&seq(&["0", "0"], "1")), Rat01::one());
    }

    #[test]
    fn sup_distance_and_order() {
        let a = Seq01::constant(r("1/2"));
        let b = Seq01::with_ascent(vec![r("0"), r("0")], r("1")).unwrap();
        // b runs 0, 0, 1/2, 3/4, ... → 1: farthest from 1/2 at the start
        assert_eq!(a.sup_distance(&b), r("1/2"));
        assert!(!a.pointwise_le(&b) && !b.pointwise_le(&a));
        let c = Seq01::constant(r("1/4"));
        // 1/4 vs 1/2 at n=2 is 1/4; vs 1 in the limit: 3/4
        assert_eq!(
            c.sup_distance(&Seq01::with_ascent(vec![r("1/4"), r("1/4")], r("1")).unwrap()),
            r("3/4")
        );
        assert!(Seq01::constant(Rat01::zero()).pointwise_le(&b));
    }

    #[test]
    fn approximant_examples() {
        let half = r("1/2");
        let same = vec![half.clone(); 5];
        assert_eq!(
            build_c_approximant(&same, &half, 3, Shift::Excess).unwrap(),
            Seq01::constant(half.clone())
        );

        let samples: Vec<Rat01> = ["0", "1/2", "1/2", "1/2"].iter().map(|s| r(s)).collect();
        for shift in [Shift::Excess, Shift::Uniform] {
            let s = build_c_approximant(&samples, &half, 1, shift).unwrap();
            assert!(in_class_c(&s));
            let t = s.tail_value();
            assert!(t <= &half && trunc_minus(&half, t) <= Rat01::dyadic(1));
            if shift == Shift::Excess {
                assert!(t >= &r("1/4"));
            }
        }

        let bad = vec![r("1/2"), r("1")];
        assert!(matches!(
            build_c_approximant(&bad, &r("1/4"), 1, Shift::Excess),
            Err(SeqError::ApproximationBoundViolated { index: 1, .. })
        ));
        let short = vec![r("0")];
        assert_eq!(
            build_c_approximant(&short, &half, 3, Shift::Uniform),
            Err(SeqError::InsufficientSamples(3))
        );
    }
}
