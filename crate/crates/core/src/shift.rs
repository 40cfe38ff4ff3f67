//! The two lattice shift systems: coset representatives Λ, the twisted
//! W-action, the shift map and the checks built on top of them.
//!
//! Everything is expressed in unscaled coordinates: a lattice point √p·μ is
//! stored as μ. The non-super family lives in (1/p)Q*/Q with p = r∨m, the super
//! family (type B only) in (1/p)Q/Q with p = 2m − 1.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::{build_root_system, RootSystem, Series, SimpleLieType, WeightVec, WeylElement, WeylGroup};
use crate::liealg::{DEFAULT_WEYL_CAP, DEFAULT_WORD_CAP};
use crate::rational::{ceil_q, is_int, qi, to_i64, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    NonSuper,
    Super,
    #[serde(rename = "ramond")]
    SuperRamond,
}

impl Variant {
    pub fn is_super(self) -> bool {
        !matches!(self, Variant::NonSuper)
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nonsuper" | "non-super" => Ok(Variant::NonSuper),
            "super" | "ns" => Ok(Variant::Super),
            "ramond" | "superramond" | "super-ramond" => Ok(Variant::SuperRamond),
            _ => Err(Error::Parse(format!("unknown variant {s:?} (nonsuper|super|ramond)"))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::NonSuper => "nonsuper",
            Variant::Super => "super",
            Variant::SuperRamond => "ramond",
        })
    }
}

/// Full data of one case: root system, Weyl group, p, the shift vector x and
/// the conformal vector γ (divided by √p).
#[derive(Clone, Debug)]
pub struct ShiftCase {
    pub rs: Arc<RootSystem>,
    pub weyl: Arc<WeylGroup>,
    pub variant: Variant,
    pub m: i64,
    pub p: i64,
    pub x: WeightVec,
    pub gamma: WeightVec,
    pub central_charge: Q,
    /// b_i: α_i* (non-super) or ϖ_i (super).
    basis: Vec<WeightVec>,
    /// Largest digit per node; (λ_• + x, α_i∨) = λ_i / digit_max_i.
    digit_max: Vec<i64>,
    /// Bound on the number of reduced words of w0 enumerated.
    pub word_cap: usize,
}

impl ShiftCase {
    pub fn new(rs: RootSystem, variant: Variant, m: i64) -> Result<Self> {
        let weyl = WeylGroup::enumerate(&rs, DEFAULT_WEYL_CAP)?;
        Self::with_weyl(Arc::new(rs), Arc::new(weyl), variant, m)
    }

    pub fn from_type(ty: &str, variant: Variant, m: i64) -> Result<Self> {
        Self::new(build_root_system(SimpleLieType::parse(ty)?)?, variant, m)
    }

    pub fn with_weyl(rs: Arc<RootSystem>, weyl: Arc<WeylGroup>, variant: Variant, m: i64) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidCase(format!("m must be positive, got {m}")));
        }
        let r = rs.rank();
        let ty = rs.lie_type;
        let (p, x, gamma, basis, digit_max, extra_c) = match variant {
            Variant::NonSuper => {
                if ty.series == Series::B && r == 1 {
                    return Err(Error::InvalidCase("B1 is only available for the super variants; use A1".into()));
                }
                let p = rs.lacing * m;
                let pq = qi(p);
                let x = rs.rho_check.scale(&(Q::one() / &pq));
                let gamma = &rs.rho - &x;
                let digit_max = (0..r).map(|i| to_i64(&(&pq / rs.coroot_ratio(i))).unwrap()).collect();
                (p, x, gamma, rs.fund_coweights.clone(), digit_max, Q::zero())
            }
            Variant::Super | Variant::SuperRamond => {
                if ty.series != Series::B {
                    return Err(Error::InvalidCase(format!(
                        "the super variants require series B, got {ty}"
                    )));
                }
                let p = 2 * m - 1;
                let pq = qi(p);
                let x = rs.rho.scale(&(Q::one() / &pq));
                let gamma = rs.rho.scale(&(Q::one() - Q::one() / &pq));
                (p, x, gamma, rs.fund_weights.clone(), vec![p; r], Q::new(1.into(), 2.into()))
            }
        };
        let central_charge = qi(r as i64) - qi(12 * p) * rs.norm2(&gamma) + extra_c;
        Ok(ShiftCase { rs, weyl, variant, m, p, x, gamma, central_charge, basis, digit_max, word_cap: DEFAULT_WORD_CAP })
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn id(&self) -> String {
        format!("{}/{}/m={}", self.rs.lie_type, self.variant, self.m)
    }

    pub fn digit_max(&self, i: usize) -> i64 {
        self.digit_max[i]
    }

    /// ρ∨ (non-super) or ρ (super): the vector px.
    pub fn rho_shift(&self) -> &WeightVec {
        if self.variant.is_super() {
            &self.rs.rho
        } else {
            &self.rs.rho_check
        }
    }

    /// λ_• = Σ (λ_i − 1)/p · b_i.
    fn lower_from_digits(&self, digits: &[i64]) -> WeightVec {
        let pq = qi(self.p);
        let mut out = WeightVec::zero(self.rank());
        for (d, b) in digits.iter().zip(&self.basis) {
            if *d != 1 {
                out = &out + &b.scale(&(qi(d - 1) / &pq));
            }
        }
        out
    }

    /// Builds λ from a minuscule index and digits, checking the ranges and
    /// (super) the parity rule.
    pub fn lambda(&self, bullet_idx: usize, digits: &[i64]) -> Result<LambdaParam> {
        let r = self.rank();
        if digits.len() != r {
            return Err(Error::RankMismatch { expected: r, got: digits.len() });
        }
        let bullet = self
            .rs
            .minuscule
            .get(bullet_idx)
            .ok_or_else(|| Error::InvalidLambda(format!("minuscule index {bullet_idx} out of range")))?
            .clone();
        for (i, &d) in digits.iter().enumerate() {
            if d < 1 || d > self.digit_max[i] {
                return Err(Error::InvalidLambda(format!(
                    "digit {} must lie in 1..={}, got {d}",
                    i + 1,
                    self.digit_max[i]
                )));
            }
        }
        if self.variant.is_super() {
            let pair = to_i64(&self.rs.copair(&bullet, r - 1)).unwrap();
            if (digits[r - 1] + pair).rem_euclid(2) != 1 {
                return Err(Error::InvalidLambda(format!(
                    "parity rule fails: λ_r + (λ•, α_r∨) = {} is even",
                    digits[r - 1] + pair
                )));
            }
        }
        let lower = self.lower_from_digits(digits);
        let value = &lower - &bullet;
        Ok(LambdaParam { bullet_idx, bullet_up: bullet, digits: digits.to_vec(), lower, value })
    }

    /// Parses "idx,d1,…,dr".
    pub fn parse_lambda(&self, s: &str) -> Result<LambdaParam> {
        let parts: Vec<i64> = s
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad lambda {s:?}"))))
            .collect::<Result<_>>()?;
        if parts.is_empty() || parts[0] < 0 {
            return Err(Error::Parse(format!("bad lambda {s:?}")));
        }
        self.lambda(parts[0] as usize, &parts[1..])
    }

    /// λ = 0.
    pub fn lambda_zero(&self) -> LambdaParam {
        self.lambda(0, &vec![1; self.rank()]).expect("zero is always a representative")
    }

    /// True when μ ∈ (1/p)Q* (non-super) or (1/p)Q (super).
    pub fn in_lattice(&self, mu: &WeightVec) -> bool {
        if mu.rank() != self.rank() {
            return false;
        }
        let pq = qi(self.p);
        if self.variant.is_super() {
            mu.scale(&pq).in_root_lattice()
        } else {
            self.rs.simple_roots.iter().all(|a| is_int(&(self.rs.pair(mu, a) * &pq)))
        }
    }

    /// Unique μ = −μ• + μ_• with μ• ∈ P and 0 < (μ_• + x, α_i∨) ≤ 1.
    pub fn canonical_decompose(&self, mu: &WeightVec) -> Result<(WeightVec, WeightVec)> {
        if !self.in_lattice(mu) {
            return Err(Error::NotInLattice(mu.to_string()));
        }
        let shifted = mu + &self.x;
        let mut up = WeightVec::zero(self.rank());
        for i in 0..self.rank() {
            let c = self.rs.copair(&shifted, i);
            let n = 1 - ceil_q(&c).to_i64().unwrap();
            if n != 0 {
                up = &up + &self.rs.fund_weights[i].scale_int(n);
            }
        }
        let low = mu + &up;
        Ok((up, low))
    }

    /// The representative of μ + Q in Λ.
    pub fn canonicalize(&self, mu: &WeightVec) -> Result<LambdaParam> {
        let (up, low) = self.canonical_decompose(mu)?;
        let idx = self.rs.minuscule_class(&up).ok_or_else(|| Error::Inconsistent(format!("{up} has no class")))?;
        let shifted = &low + &self.x;
        let digits: Vec<i64> = (0..self.rank())
            .map(|i| {
                let d = self.rs.copair(&shifted, i) * qi(self.digit_max[i]);
                to_i64(&d).ok_or_else(|| Error::NotInLattice(mu.to_string()))
            })
            .collect::<Result<_>>()?;
        self.lambda(idx, &digits)
    }

    /// Λ in lexicographic order (minuscule index, then digits).
    pub fn enumerate_lambda(&self) -> Vec<LambdaParam> {
        let r = self.rank();
        let mut out = Vec::new();
        for idx in 0..self.rs.minuscule.len() {
            let mut digits = vec![1i64; r];
            'odometer: loop {
                if let Ok(l) = self.lambda(idx, &digits) {
                    out.push(l);
                }
                for k in (0..r).rev() {
                    if digits[k] < self.digit_max[k] {
                        digits[k] += 1;
                        continue 'odometer;
                    }
                    digits[k] = 1;
                }
                break;
            }
        }
        out
    }

    /// σ∗λ = σ(λ + x) − x, as a representative.
    pub fn w_act(&self, sigma: &WeylElement, lam: &LambdaParam) -> LambdaParam {
        let img = &sigma.apply(&(&lam.value + &self.x)) - &self.x;
        self.canonicalize(&img).expect("Λ is W-stable")
    }

    /// σ↑λ = σ∗λ_• − (σ∗λ)_•, which equals σ(λ•) − μ• for the raw
    /// decomposition of σ∗λ.
    pub fn shift_map(&self, sigma: &WeylElement, lam: &LambdaParam) -> WeightVec {
        let moved = &sigma.apply(&(&lam.lower + &self.x)) - &self.x;
        let img = &sigma.apply(&(&lam.value + &self.x)) - &self.x;
        let (_, low) = self.canonical_decompose(&img).expect("Λ is W-stable");
        &moved - &low
    }

    fn shift_and_act(&self, sigma: &WeylElement, lam: &LambdaParam) -> (WeightVec, LambdaParam) {
        (self.shift_map(sigma, lam), self.w_act(sigma, lam))
    }

    pub fn is_fixed(&self, i: usize, lam: &LambdaParam) -> bool {
        lam.digits[i] == self.digit_max[i]
    }

    /// Degree of the i-th short screening on V_λ; `None` marks a fixed node.
    pub fn screening_degree(&self, i: usize, lam: &LambdaParam) -> Option<i64> {
        let pq = qi(self.p);
        let v = &lam.value.scale(&pq) + self.rho_shift();
        let (t, modulus) = if self.variant.is_super() {
            (self.rs.copair(&v, i), self.p)
        } else {
            (self.rs.pair(&v, &self.rs.simple_roots[i]), self.digit_max[i])
        };
        let s = to_i64(&t).expect("integral residue").rem_euclid(modulus);
        if s == 0 {
            None
        } else {
            Some(s)
        }
    }

    pub fn check_weak(&self, lam: &LambdaParam) -> bool {
        let r = self.rank();
        (0..r).all(|j| {
            if self.is_fixed(j, lam) {
                return true;
            }
            let s = self.shift_map(&self.simple(j), lam);
            (0..r).all(|i| self.rs.copair(&s, i) == qi(-i64::from(i == j)))
        })
    }

    fn simple(&self, i: usize) -> WeylElement {
        self.weyl.get(self.weyl.index_of(self.weyl.simple_mat(i)).unwrap()).clone()
    }

    /// Letters of a w0 word in the order they act (rightmost first).
    fn application_order(&self, word: &[usize]) -> Result<Vec<usize>> {
        let e = self.weyl.from_word(word)?;
        if e.length != self.weyl.longest().length {
            return Err(Error::NotReducedWord(word.to_vec()));
        }
        Ok(word.iter().rev().copied().collect())
    }

    /// The strong condition along one reduced word of w0: each prefix shift
    /// pairs to zero with the next letter.
    pub fn check_strong(&self, lam: &LambdaParam, word: &[usize]) -> Result<bool> {
        let order = self.application_order(word)?;
        let mut idx = 0usize;
        for (k, &next) in order.iter().enumerate() {
            if k > 0 {
                let s = self.shift_map(self.weyl.get(idx), lam);
                if !self.rs.copair(&s, next).is_zero() {
                    return Ok(false);
                }
            }
            idx = self.weyl.left_mul(next, idx);
        }
        Ok(true)
    }

    /// Telescoped form: every prefix shift equals the sum of the simple shifts
    /// collected along the way.
    pub fn check_strong_alt(&self, lam: &LambdaParam, word: &[usize]) -> Result<bool> {
        let order = self.application_order(word)?;
        let mut idx = 0usize;
        let mut acted = lam.clone();
        let mut sum = WeightVec::zero(self.rank());
        for &a in &order {
            let (s, next) = self.shift_and_act(&self.simple(a), &acted);
            sum = &sum + &s;
            acted = next;
            idx = self.weyl.left_mul(a, idx);
            if self.shift_map(self.weyl.get(idx), lam) != sum {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The reduced word used by default: the stored word of w0.
    pub fn default_w0_word(&self) -> Vec<usize> {
        self.weyl.longest().word.clone()
    }

    pub fn w0_words(&self) -> Result<Vec<Vec<usize>>> {
        self.weyl.reduced_words(self.weyl.longest(), self.word_cap)
    }

    pub fn check_strong_all_words(&self, lam: &LambdaParam) -> Result<StrongVerdict> {
        let words = self.w0_words()?;
        let mut all = true;
        let mut any = false;
        for w in &words {
            let ok = self.check_strong(lam, w)?;
            all &= ok;
            any |= ok;
        }
        Ok(StrongVerdict { all, any, words: words.len() })
    }

    /// (pλ_• + ρ∨, ᴸθ) ≤ p, with ρ in place of ρ∨ for the super family.
    pub fn alcove_value(&self, lam: &LambdaParam) -> Q {
        let v = &lam.lower.scale(&qi(self.p)) + self.rho_shift();
        self.rs.pair(&v, &self.rs.theta_l)
    }

    pub fn alcove_inequality(&self, lam: &LambdaParam) -> bool {
        self.alcove_value(lam) <= qi(self.p)
    }

    pub fn w0_shift(&self, lam: &LambdaParam) -> WeightVec {
        self.shift_map(self.weyl.longest(), lam)
    }

    /// −ρ. Along a word where the strong condition holds every step adds a
    /// weight pairing to −1 with the new coroot, so w0↑λ is forced to be −ρ
    /// in both families; it agrees with −ρ∨ only for simply laced types.
    /// In rank one the strong condition is empty and a σ-fixed λ gives −2ρ.
    pub fn expected_w0_shift(&self) -> WeightVec {
        -&self.rs.rho
    }

    pub fn condition_row(&self, lam: &LambdaParam, all_words: bool) -> Result<LambdaRow> {
        let strong = if all_words {
            let v = self.check_strong_all_words(lam)?;
            if v.all != v.any {
                return Err(Error::Inconsistent(format!("strong condition depends on the word at {lam}")));
            }
            v.all
        } else {
            self.check_strong(lam, &self.default_w0_word())?
        };
        Ok(LambdaRow {
            lambda: lam.label(),
            weak: self.check_weak(lam),
            strong,
            alcove: self.alcove_inequality(lam),
            w0_shift: self.w0_shift(lam),
        })
    }

    pub fn condition_table(&self, all_words: bool) -> Result<Vec<LambdaRow>> {
        self.enumerate_lambda().par_iter().map(|l| self.condition_row(l, all_words)).collect()
    }

    /// Checks every axiom and easy fact over Λ × W × Π.
    pub fn verify_axioms(&self) -> ShiftReport {
        let lambdas = self.enumerate_lambda();
        let per: Vec<(BTreeMap<&'static str, usize>, Vec<Failure>)> =
            lambdas.par_iter().map(|l| self.verify_lambda(l)).collect();
        let mut counts: BTreeMap<String, usize> = BTreeMap::new();
        let mut failures = Vec::new();
        for (c, f) in per {
            for (k, v) in c {
                *counts.entry(k.to_string()).or_default() += v;
            }
            failures.extend(f);
        }
        ShiftReport { case: self.id(), lambdas: lambdas.len(), checks: counts, failures }
    }

    fn verify_lambda(&self, lam: &LambdaParam) -> (BTreeMap<&'static str, usize>, Vec<Failure>) {
        let mut counts = BTreeMap::new();
        let mut failures = Vec::new();
        let r = self.rank();
        let mut record = |axiom: &'static str, ok: bool, word: &[usize], i: Option<usize>, detail: String| {
            *counts.entry(axiom).or_insert(0usize) += 1;
            if !ok {
                failures.push(Failure {
                    axiom: axiom.to_string(),
                    lambda: lam.label(),
                    word: word.iter().map(|j| j + 1).collect(),
                    node: i.map(|i| i + 1),
                    detail,
                });
            }
        };
        let n = self.weyl.len();
        let shifts: Vec<WeightVec> = (0..n).map(|k| self.shift_map(self.weyl.get(k), lam)).collect();
        let acts: Vec<LambdaParam> = (0..n).map(|k| self.w_act(self.weyl.get(k), lam)).collect();

        record("identity", shifts[0].is_zero(), &[], None, format!("id↑λ = {}", shifts[0]));
        for (k, s) in shifts.iter().enumerate() {
            let w = self.weyl.get(k);
            record("integral", self.rs.is_integral(s), &w.word, None, format!("σ↑λ = {s}"));
        }
        // group action on Λ
        for a in 0..n {
            for i in 0..r {
                let si = self.simple(i);
                let lhs = &acts[self.weyl.left_mul(i, a)];
                let rhs = self.w_act(&si, &acts[a]);
                record("action", *lhs == rhs, &self.weyl.get(a).word, Some(i), format!("{lhs} vs {rhs}"));
            }
        }
        for i in 0..r {
            let si = self.simple(i);
            let (s, moved) = self.shift_and_act(&si, lam);
            let fixed = self.is_fixed(i, lam);
            record(
                "fixed-point",
                fixed == (moved == *lam),
                &si.word,
                Some(i),
                format!("is_fixed = {fixed}, σ_i∗λ = {moved}"),
            );
            let ok = if fixed {
                s == -&self.rs.simple_roots[i]
            } else {
                self.rs.copair(&s, i) == qi(-1)
            };
            record("2c", ok, &si.word, Some(i), format!("σ_i↑λ = {s}"));
            let back = self.shift_map(&si, &moved);
            let total = &s + &back;
            let expect = self.rs.simple_roots[i].scale_int(if fixed { -2 } else { -1 });
            record("pair-sum", total == expect, &si.word, Some(i), format!("sum = {total}"));
        }
        for a in 0..n {
            let w = self.weyl.get(a);
            for i in 0..r {
                let b = self.weyl.left_mul(i, a);
                let si = self.simple(i);
                let rhs = &self.rs.reflect_unchecked(i, &shifts[a]) + &self.shift_map(&si, &acts[a]);
                record("2a", shifts[b] == rhs, &w.word, Some(i), format!("{} vs {rhs}", shifts[b]));
                let pairing = self.rs.copair(&shifts[a], i);
                if self.weyl.get(b).length > w.length {
                    record("2b", !pairing.is_negative(), &w.word, Some(i), format!("pairing {pairing}"));
                } else {
                    record("descent", pairing.is_negative(), &w.word, Some(i), format!("pairing {pairing}"));
                }
            }
        }
        (counts, failures)
    }
}

/// A coset representative −λ• + λ_•.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LambdaParam {
    pub bullet_idx: usize,
    pub bullet_up: WeightVec,
    pub digits: Vec<i64>,
    /// λ_•.
    pub lower: WeightVec,
    pub value: WeightVec,
}

impl LambdaParam {
    /// "idx,d1,…,dr".
    pub fn label(&self) -> String {
        let mut s = self.bullet_idx.to_string();
        for d in &self.digits {
            s.push(',');
            s.push_str(&d.to_string());
        }
        s
    }
}

impl fmt::Display for LambdaParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StrongVerdict {
    /// Holds along every reduced word of w0.
    pub all: bool,
    /// Holds along at least one.
    pub any: bool,
    pub words: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaRow {
    pub lambda: String,
    pub weak: bool,
    pub strong: bool,
    pub alcove: bool,
    pub w0_shift: WeightVec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub axiom: String,
    pub lambda: String,
    /// 1-based word of σ.
    pub word: Vec<usize>,
    pub node: Option<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftReport {
    pub case: String,
    pub lambdas: usize,
    /// Number of evaluated instances per axiom.
    pub checks: BTreeMap<String, usize>,
    pub failures: Vec<Failure>,
}

impl ShiftReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}
