//! Conformal weights of Fock points and the Weyl-type character formulas.
//!
//! Every character here has the shape (Σ ± q^{E}) · D(q), where the finite
//! signed sum is built exactly and D is η(q)^{−r} times the fermion factor of
//! the sector. The exponent E already absorbs the −c/24 shift of the bosonic
//! part, so the leading exponent of a vacuum character is −c/24.
//!
//! Truncation: `order` counts q-units past the smallest exponent that occurs
//! in the sum before any cancellation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::WeightVec;
use crate::qseries::{eta_inv_pow, fermion_char, restricted_partitions, FermionKind, QSeries};
use crate::rational::{ceil_q, floor_q, mat_inverse, qi, qr, ser_q, Q};
use crate::shift::{LambdaParam, ShiftCase, Variant};

/// Above this many dominant α the full character is refused.
pub const FT_ALPHA_LIMIT: usize = 10_000;

/// Which trace is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CharKind {
    /// Plain character; the NS fermion factor is included in super cases.
    Ch,
    /// Supercharacter (super cases only).
    Sch,
    /// Ramond sector (super cases only).
    Ramond,
}

impl CharKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ch" => Ok(CharKind::Ch),
            "sch" => Ok(CharKind::Sch),
            "ramond" | "r" => Ok(CharKind::Ramond),
            _ => Err(Error::Parse(format!("unknown character kind {s:?} (ch|sch|ramond)"))),
        }
    }

    /// The natural kind of a case: Ramond for the Ramond variant.
    pub fn default_for(v: Variant) -> Self {
        match v {
            Variant::SuperRamond => CharKind::Ramond,
            _ => CharKind::Ch,
        }
    }
}

fn check_kind(c: &ShiftCase, kind: CharKind) -> Result<()> {
    if kind != CharKind::Ch && !c.variant.is_super() {
        return Err(Error::InvalidCase(format!("{kind:?} needs a super variant")));
    }
    Ok(())
}

/// Δ of the lattice point √p·ν.
pub fn fock_delta(nu: &WeightVec, c: &ShiftCase) -> Q {
    let rs = &c.rs;
    let p = qi(c.p);
    let quad = rs.norm2(nu) * &p / qi(2);
    if c.variant.is_super() {
        quad - (&p - Q::one()) * rs.pair(nu, &rs.rho)
    } else {
        quad - &p * rs.pair(nu, &rs.rho) + rs.pair(nu, &rs.rho_check)
    }
}

/// Δ(ν) − c_bos/24 + r/24, which is (1/2p)|pν − pρ + ρ∨|² (ρ in place of ρ∨
/// in super cases).
pub fn fock_exponent(nu: &WeightVec, c: &ShiftCase) -> Q {
    let p = qi(c.p);
    let v = &(&nu.scale(&p) - &c.rs.rho.scale(&p)) + c.rho_shift();
    c.rs.norm2(&v) / (qi(2) * p)
}

/// The constants of the Ramond weight Δ^R(ν) = Δ(ν) + A(α_r,ν) + B(α_{r−1},ν) + C,
/// in unscaled coordinates (so Aα_r + Bα_{r−1} is the flow vector ϖ_r).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamondConstants {
    #[serde(serialize_with = "ser_q")]
    pub a: Q,
    #[serde(serialize_with = "ser_q")]
    pub b: Q,
    #[serde(serialize_with = "ser_q")]
    pub c: Q,
}

impl RamondConstants {
    /// Solves for A, B, C against the spectral flow ν ↦ ν + ϖ_r/p on a few
    /// lattice points and checks the result on further ones.
    pub fn derive(c: &ShiftCase) -> Result<Self> {
        if !c.variant.is_super() {
            return Err(Error::InvalidCase("Ramond sectors exist only in the super family".into()));
        }
        let rs = &c.rs;
        let r = rs.rank();
        let flow = rs.fund_weights[r - 1].scale(&(Q::one() / qi(c.p)));
        let target = |nu: &WeightVec| fock_delta(&(nu + &flow), c) - fock_delta(nu, c);
        let ar = &rs.simple_roots[r - 1];
        let zero = WeightVec::zero(r);
        let prev = if r >= 2 { rs.simple_roots[r - 2].clone() } else { zero.clone() };
        let row = |nu: &WeightVec| -> Vec<Q> {
            if r >= 2 {
                vec![rs.pair(ar, nu), rs.pair(&prev, nu), Q::one()]
            } else {
                vec![rs.pair(ar, nu), Q::one()]
            }
        };
        let mut pts = vec![zero.clone(), ar.clone()];
        if r >= 2 {
            pts.push(prev.clone());
        }
        let m: Vec<Vec<Q>> = pts.iter().map(&row).collect();
        let inv = mat_inverse(&m).ok_or_else(|| Error::Inconsistent("singular Ramond system".into()))?;
        let rhs: Vec<Q> = pts.iter().map(target).collect();
        let sol: Vec<Q> = inv.iter().map(|row| row.iter().zip(&rhs).map(|(a, b)| a * b).sum()).collect();
        let (a, b, cc) = if r >= 2 {
            (sol[0].clone(), sol[1].clone(), sol[2].clone())
        } else {
            (sol[0].clone(), Q::zero(), sol[1].clone())
        };
        let k = Self { a, b, c: cc };
        let mut extra = vec![ar.scale_int(2), -ar, rs.rho.clone(), rs.theta.clone()];
        for w in &rs.fund_weights {
            extra.push(w.clone());
        }
        if r >= 2 {
            extra.push(ar + &prev);
            extra.push(&prev - ar);
        }
        for nu in &extra {
            if k.shift(nu, c) != target(nu) {
                return Err(Error::Unsupported(format!(
                    "the Ramond flow of {} is not of the form A(α_r,·) + B(α_(r-1),·) + C",
                    rs.lie_type
                )));
            }
        }
        Ok(k)
    }

    /// Δ^R(ν) − Δ(ν).
    pub fn shift(&self, nu: &WeightVec, c: &ShiftCase) -> Q {
        let rs = &c.rs;
        let r = rs.rank();
        let mut s = &self.a * rs.pair(&rs.simple_roots[r - 1], nu) + &self.c;
        if r >= 2 {
            s += &self.b * rs.pair(&rs.simple_roots[r - 2], nu);
        }
        s
    }
}

/// Ramond weight of √p·ν, including the 1/16 of the fermion ground state.
pub fn ramond_delta(nu: &WeightVec, c: &ShiftCase, k: &RamondConstants) -> Q {
    fock_delta(nu, c) + k.shift(nu, c) + qr(1, 16)
}

/// A point of the lattice Fock space of V_λ together with its Cartan weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FockPoint {
    pub nu: WeightVec,
    pub lambda: String,
    pub weight: WeightVec,
}

/// The Fock point of V_λ whose Cartan weight is β, namely ν = λ_• − β.
pub fn fock_point(lam: &LambdaParam, beta: &WeightVec, c: &ShiftCase) -> Result<FockPoint> {
    if !c.rs.is_integral(beta) || !(beta - &lam.bullet_up).in_root_lattice() {
        return Err(Error::NotAWeight(format!("{beta} for λ = {lam}")));
    }
    let nu = &lam.lower - beta;
    let labels: Vec<BigInt> = (0..c.rank()).map(|i| ceil_q(&(-c.rs.copair(&nu, i)))).collect();
    let weight = c.rs.from_dynkin(&labels.into_iter().map(Q::from_integer).collect::<Vec<_>>())?;
    debug_assert_eq!(&weight, beta);
    Ok(FockPoint { nu, lambda: lam.label(), weight })
}

/// σ∘β = σ(β + ρ) − ρ.
pub fn dot(c: &ShiftCase, sigma: &crate::liealg::WeylElement, beta: &WeightVec) -> WeightVec {
    &sigma.apply(&(beta + &c.rs.rho)) - &c.rs.rho
}

/// f(β) = ⌊(β, α_r)⌋.
pub fn super_sign_exponent(c: &ShiftCase, beta: &WeightVec) -> BigInt {
    let r = c.rank();
    floor_q(&c.rs.pair(beta, &c.rs.simple_roots[r - 1]))
}

/// A finite signed sum Σ c_k q^{e_k} awaiting the common factor D.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Numerator {
    pub terms: Vec<(Q, BigInt)>,
}

impl Numerator {
    pub fn push(&mut self, e: Q, coef: BigInt) {
        self.terms.push((e, coef));
    }

    pub fn min_exponent(&self) -> Option<Q> {
        self.terms.iter().map(|t| t.0.clone()).min()
    }

    pub fn extend(&mut self, other: Numerator, factor: &BigInt) {
        self.terms.extend(other.terms.into_iter().map(|(e, k)| (e, k * factor)));
    }

    /// Terms merged by exponent, zeros dropped, sorted.
    pub fn collected(&self) -> Vec<(Q, BigInt)> {
        let mut t = self.terms.clone();
        t.sort();
        let mut out: Vec<(Q, BigInt)> = Vec::new();
        for (e, k) in t {
            match out.last_mut() {
                Some((le, lk)) if *le == e => *lk += k,
                _ => out.push((e, k)),
            }
        }
        out.retain(|(_, k)| !k.is_zero());
        out
    }
}

/// Leading exponent of D for a sector.
fn denominator_lead(c: &ShiftCase, kind: CharKind) -> Q {
    let eta = qr(-(c.rank() as i64), 24);
    match (c.variant.is_super(), kind) {
        (false, _) => eta,
        (true, CharKind::Ramond) => eta + qr(1, 24),
        (true, _) => eta + qr(-1, 48),
    }
}

/// D = η^{−r} · (fermion factor) through q^{lead + units}.
pub fn denominator(c: &ShiftCase, kind: CharKind, units: usize) -> QSeries {
    let eta = eta_inv_pow(c.rank() as u32, units);
    if !c.variant.is_super() {
        return eta;
    }
    let f = match kind {
        CharKind::Ch => FermionKind::NsCh,
        CharKind::Sch => FermionKind::NsSch,
        CharKind::Ramond => FermionKind::RTwisted,
    };
    eta.mul(&fermion_char(f, units)).expect("fermion grids are small")
}

/// Multiplies a numerator by D and truncates at the absolute exponent `cap`.
pub fn finish(num: &Numerator, c: &ShiftCase, kind: CharKind, cap: &Q) -> Result<QSeries> {
    let lead_d = denominator_lead(c, kind);
    let limit = cap - &lead_d;
    let kept: Vec<(Q, BigInt)> = num.collected().into_iter().filter(|(e, _)| *e <= limit).collect();
    if kept.is_empty() {
        return Ok(QSeries::zero(cap.clone()));
    }
    let lead_n = kept[0].0.clone();
    let n = QSeries::from_terms(kept, limit)?;
    let units = ceil_q(&(cap - &lead_n - &lead_d)).to_usize().unwrap_or(0);
    let d = denominator(c, kind, units);
    Ok(n.mul(&d)?.truncate(cap))
}

/// Cap `order` units past the smallest exponent of the numerator.
pub fn cap_for(num: &Numerator, c: &ShiftCase, kind: CharKind, order: usize) -> Q {
    let lead = num.min_exponent().unwrap_or_else(Q::zero);
    lead + denominator_lead(c, kind) + qi(order as i64)
}

struct Ctx {
    ramond: Option<RamondConstants>,
}

impl Ctx {
    fn new(c: &ShiftCase, kind: CharKind) -> Result<Self> {
        check_kind(c, kind)?;
        let ramond = if kind == CharKind::Ramond { Some(RamondConstants::derive(c)?) } else { None };
        Ok(Ctx { ramond })
    }

    fn exponent(&self, nu: &WeightVec, c: &ShiftCase) -> Q {
        let e = fock_exponent(nu, c);
        match &self.ramond {
            Some(k) => e + k.shift(nu, c),
            None => e,
        }
    }
}

/// Numerator of a single weight space V_λ^{h=β}.
fn weight_space_numerator(lam: &LambdaParam, beta: &WeightVec, c: &ShiftCase, ctx: &Ctx) -> Result<Numerator> {
    let fp = fock_point(lam, beta, c)?;
    let mut n = Numerator::default();
    n.push(ctx.exponent(&fp.nu, c), BigInt::one());
    Ok(n)
}

/// ch V_λ^{h=β} (or its Ramond/super analogue).
pub fn weight_space_char(lam: &LambdaParam, beta: &WeightVec, c: &ShiftCase, kind: CharKind, order: usize) -> Result<QSeries> {
    let ctx = Ctx::new(c, kind)?;
    let n = weight_space_numerator(lam, beta, c, &ctx)?;
    finish(&n, c, kind, &cap_for(&n, c, kind, order))
}

/// Σ_σ (−1)^{l(σ)} [V_λ^{h=σ∘β}], the supercharacter carrying the extra
/// sign (−1)^{f(σ∘β)}.
pub fn alternating_numerator(lam: &LambdaParam, beta: &WeightVec, c: &ShiftCase, kind: CharKind) -> Result<Numerator> {
    let ctx = Ctx::new(c, kind)?;
    alternating_numerator_ctx(lam, beta, c, kind, &ctx)
}

fn alternating_numerator_ctx(
    lam: &LambdaParam,
    beta: &WeightVec,
    c: &ShiftCase,
    kind: CharKind,
    ctx: &Ctx,
) -> Result<Numerator> {
    let mut n = Numerator::default();
    for sigma in c.weyl.elements() {
        let b = dot(c, sigma, beta);
        let fp = fock_point(lam, &b, c)?;
        let mut sign = sigma.sign();
        if kind == CharKind::Sch && super_sign_exponent(c, &b).is_odd() {
            sign = -sign;
        }
        n.push(ctx.exponent(&fp.nu, c), BigInt::from(sign));
    }
    Ok(n)
}

/// The second form Σ_σ (−1)^{l(σ)} [V_{σ∗λ}^{h=β−σ↑λ}].
pub fn shifted_form_numerator(lam: &LambdaParam, beta: &WeightVec, c: &ShiftCase) -> Result<Numerator> {
    let ctx = Ctx::new(c, CharKind::Ch)?;
    let mut n = Numerator::default();
    for sigma in c.weyl.elements() {
        let moved = c.w_act(sigma, lam);
        let h = beta - &c.shift_map(sigma, lam);
        let fp = fock_point(&moved, &h, c)?;
        n.push(ctx.exponent(&fp.nu, c), BigInt::from(sigma.sign()));
    }
    Ok(n)
}

/// The alternating sum F(β) as a series.
pub fn alternating_sum(lam: &LambdaParam, beta: &WeightVec, c: &ShiftCase, kind: CharKind, order: usize) -> Result<QSeries> {
    let n = alternating_numerator(lam, beta, c, kind)?;
    finish(&n, c, kind, &cap_for(&n, c, kind, order))
}

fn check_alpha(alpha: &WeightVec, c: &ShiftCase) -> Result<()> {
    if alpha.rank() != c.rank() {
        return Err(Error::RankMismatch { expected: c.rank(), got: alpha.rank() });
    }
    if !alpha.in_root_lattice() || !c.rs.is_dominant(alpha) {
        return Err(Error::NotDominant(format!("{alpha} (α must lie in P₊ ∩ Q)")));
    }
    Ok(())
}

/// Numerator of the multiplet character for α ∈ P₊ ∩ Q. For the plain
/// character both displayed forms are evaluated and must agree.
pub fn multiplet_numerator(alpha: &WeightVec, lam: &LambdaParam, c: &ShiftCase, kind: CharKind) -> Result<Numerator> {
    check_alpha(alpha, c)?;
    let beta = alpha + &lam.bullet_up;
    let n = alternating_numerator(lam, &beta, c, kind)?;
    if kind == CharKind::Ch {
        let other = shifted_form_numerator(lam, &beta, c)?;
        if other.collected() != n.collected() {
            return Err(Error::Inconsistent(format!("the two character forms differ at α = {alpha}, λ = {lam}")));
        }
    }
    Ok(n)
}

/// ch W_{−α+λ} in the natural sector of the case (NS for super, Ramond for
/// the Ramond variant).
pub fn multiplet_char(alpha: &WeightVec, lam: &LambdaParam, c: &ShiftCase, order: usize) -> Result<QSeries> {
    multiplet_series(alpha, lam, c, CharKind::default_for(c.variant), order)
}

pub fn multiplet_superchar(alpha: &WeightVec, lam: &LambdaParam, c: &ShiftCase, order: usize) -> Result<QSeries> {
    multiplet_series(alpha, lam, c, CharKind::Sch, order)
}

pub fn multiplet_ramond_char(alpha: &WeightVec, lam: &LambdaParam, c: &ShiftCase, order: usize) -> Result<QSeries> {
    multiplet_series(alpha, lam, c, CharKind::Ramond, order)
}

pub fn multiplet_series(alpha: &WeightVec, lam: &LambdaParam, c: &ShiftCase, kind: CharKind, order: usize) -> Result<QSeries> {
    let n = multiplet_numerator(alpha, lam, c, kind)?;
    finish(&n, c, kind, &cap_for(&n, c, kind, order))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WallReport {
    pub points: usize,
    pub walls: usize,
    pub antisymmetry_checks: usize,
    pub failures: Vec<String>,
}

impl WallReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Sweeps β ∈ λ• + Q with Dynkin labels in [−radius, radius]: on walls
/// (β + ρ singular) the alternating sum must vanish, elsewhere
/// F(τ∘β) = (−1)^{l(τ)} F(β) for every τ ∈ W.
pub fn wall_scan(c: &ShiftCase, lam: &LambdaParam, radius: i64, order: usize) -> Result<WallReport> {
    use rayon::prelude::*;
    let r = c.rank();
    let side = (2 * radius + 1) as usize;
    let total = side.checked_pow(r as u32).ok_or_else(|| Error::SizeLimit("wall sweep".into()))?;
    let kind = CharKind::default_for(c.variant);
    let parts: Vec<Result<WallReport>> = (0..total)
        .into_par_iter()
        .map(|mut n| {
            let mut labels = Vec::with_capacity(r);
            for _ in 0..r {
                labels.push(Q::from_integer(BigInt::from((n % side) as i64 - radius)));
                n /= side;
            }
            let beta = c.rs.from_dynkin(&labels)?;
            if !(&beta - &lam.bullet_up).in_root_lattice() {
                return Ok(WallReport::default());
            }
            let shifted = &beta + &c.rs.rho;
            let mut rep = WallReport { points: 1, ..Default::default() };
            let f = alternating_sum(lam, &beta, c, kind, order)?;
            if c.rs.positive_roots.iter().any(|a| c.rs.pair(&shifted, &c.rs.coroot(a)).is_zero()) {
                rep.walls = 1;
                if !f.is_zero() {
                    rep.failures.push(format!("β = {beta}: nonzero on a wall"));
                }
                return Ok(rep);
            }
            for tau in c.weyl.elements() {
                let g = alternating_sum(lam, &dot(c, tau, &beta), c, kind, order)?;
                let expect = if tau.sign() == 1 { f.clone() } else { f.neg() };
                rep.antisymmetry_checks += 1;
                if g.truncate(f.precision()) != expect.truncate(g.precision()) {
                    rep.failures.push(format!("β = {beta}, τ = {:?}", tau.word_1based()));
                }
            }
            Ok(rep)
        })
        .collect();
    let mut out = WallReport::default();
    for p in parts {
        let p = p?;
        out.points += p.points;
        out.walls += p.walls;
        out.antisymmetry_checks += p.antisymmetry_checks;
        out.failures.extend(p.failures);
    }
    Ok(out)
}

/// Dominant elements of Q of a given height.
pub fn dominant_root_lattice_level(c: &ShiftCase, height: i64) -> Vec<WeightVec> {
    let r = c.rank();
    let mut out = Vec::new();
    let mut cur = vec![0i64; r];
    fn rec(c: &ShiftCase, k: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<WeightVec>) {
        let r = cur.len();
        if k == r - 1 {
            cur[k] = left;
            let v = WeightVec::from_ints(cur);
            if c.rs.is_dominant(&v) {
                out.push(v);
            }
            return;
        }
        for a in 0..=left {
            cur[k] = a;
            rec(c, k + 1, left - a, cur, out);
        }
    }
    rec(c, 0, height, &mut cur, &mut out);
    out
}

/// Σ_{α ∈ P₊∩Q} dim L_{α+λ•} · ch W_{−α+λ}.
pub fn ft_char(lam: &LambdaParam, c: &ShiftCase, kind: CharKind, order: usize) -> Result<QSeries> {
    let ctx = Ctx::new(c, kind)?;
    let lead_d = denominator_lead(c, kind);
    let zero = WeightVec::zero(c.rank());
    let first = alternating_numerator_ctx(lam, &(&zero + &lam.bullet_up), c, kind, &ctx)?;
    let cap = cap_for(&first, c, kind, order);
    let mut total = Numerator::default();
    let mut seen = 0usize;
    let mut quiet_levels = 0;
    for h in 0.. {
        let level = dominant_root_lattice_level(c, h);
        if level.is_empty() {
            continue;
        }
        let mut all_above = true;
        for alpha in level {
            seen += 1;
            if seen > FT_ALPHA_LIMIT {
                return Err(Error::SizeLimit(format!("more than {FT_ALPHA_LIMIT} dominant α below the cutoff")));
            }
            let beta = &alpha + &lam.bullet_up;
            let n = alternating_numerator_ctx(lam, &beta, c, kind, &ctx)?;
            let low = n.min_exponent().unwrap();
            if &low + &lead_d <= &cap + qi(2) {
                all_above = false;
            }
            let dim = c.rs.weyl_dim(&beta)?;
            total.extend(n, &dim);
        }
        if all_above {
            quiet_levels += 1;
            if quiet_levels >= 2 {
                break;
            }
        } else {
            quiet_levels = 0;
        }
    }
    finish(&total, c, kind, &cap)
}

/// ch of the Verma-type module with parameter μ: q^{(1/2p)|μ − pρ + ρ∨|²}·D
/// (ρ in place of ρ∨ in super cases).
pub fn verma_char(mu: &WeightVec, c: &ShiftCase, kind: CharKind, order: usize) -> Result<QSeries> {
    check_kind(c, kind)?;
    let nu = mu.scale(&(Q::one() / qi(c.p)));
    let mut n = Numerator::default();
    n.push(fock_exponent(&nu, c), BigInt::one());
    finish(&n, c, kind, &cap_for(&n, c, kind, order))
}

/// NS Verma character of the super family.
pub fn verma_char_super(mu: &WeightVec, c: &ShiftCase, order: usize) -> Result<QSeries> {
    if c.variant != Variant::Super {
        return Err(Error::InvalidCase("verma_char_super needs the super variant".into()));
    }
    verma_char(mu, c, CharKind::Ch, order)
}

/// Π_{k ∈ ℤ+1/2, k ≥ 3/2}(1 + εq^k) through q^{order}.
fn half_odd_from_three_halves(sign: i64, order: usize) -> QSeries {
    let n = 2 * order;
    let mut c = vec![BigInt::zero(); n + 1];
    c[0] = BigInt::one();
    for j in (3..=n).step_by(2) {
        for k in (j..=n).rev() {
            let t = &c[k - j] * sign;
            c[k] += t;
        }
    }
    QSeries::new(Q::zero(), 2, c, qi(order as i64)).expect("nonempty")
}

/// Independent vacuum character of the W-algebra: q^{−c/24} Π_j Π_{n>e_j}(1−qⁿ)^{−1},
/// and for super r = 1 the N=1 vacuum q^{−c/24}Π_{n≥2}(1−qⁿ)^{−1}Π_{k≥3/2}(1+q^k).
pub fn walg_vacuum_oracle(c: &ShiftCase, order: usize) -> Result<QSeries> {
    vacuum_oracle(c, CharKind::Ch, order)
}

/// Super r = 1 supercharacter oracle, with (1 − q^k) in the fermionic product.
pub fn walg_vacuum_superchar_oracle(c: &ShiftCase, order: usize) -> Result<QSeries> {
    vacuum_oracle(c, CharKind::Sch, order)
}

fn vacuum_oracle(c: &ShiftCase, kind: CharKind, order: usize) -> Result<QSeries> {
    let shift = -&c.central_charge / qi(24);
    let s = match (c.variant, kind) {
        (Variant::NonSuper, CharKind::Ch) => {
            let mut acc = QSeries::one(qi(order as i64));
            for e in &c.rs.exponents {
                acc = acc.mul(&restricted_partitions((*e + 1) as usize, order))?;
            }
            acc
        }
        (Variant::Super, k) if c.rank() == 1 && k != CharKind::Ramond => {
            let sign = if k == CharKind::Ch { 1 } else { -1 };
            restricted_partitions(2, order).mul(&half_odd_from_three_halves(sign, order))?
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "no independent vacuum oracle for {} ({kind:?})",
                c.id()
            )))
        }
    };
    Ok(s.qshift(&shift))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::QSeries;

    fn case(t: &str, v: Variant, m: i64) -> ShiftCase {
        ShiftCase::from_type(t, v, m).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn screening_currents_have_weight_one() {
        for t in ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2", "D4", "F4"] {
            for m in 1..=4 {
                let c = case(t, Variant::NonSuper, m);
                for i in 0..c.rank() {
                    let a = &c.rs.simple_roots[i];
                    assert_eq!(fock_delta(a, &c), qi(1), "{t} m={m}");
                    let co = c.rs.simple_coroots[i].scale(&(-Q::one() / qi(c.p)));
                    assert_eq!(fock_delta(&co, &c), qi(1), "{t} m={m}");
                }
            }
        }
        assert_eq!(fock_delta(&WeightVec::zero(2), &case("A2", Variant::NonSuper, 2)), qi(0));
    }

    #[test]
    fn exponent_is_shifted_delta() {
        for (t, v, m) in [("A2", Variant::NonSuper, 2), ("G2", Variant::NonSuper, 3), ("B2", Variant::Super, 2)] {
            let c = case(t, v, m);
            let r = qi(c.rank() as i64);
            let bos = if v.is_super() { &c.central_charge - qr(1, 2) } else { c.central_charge.clone() };
            for nu in [c.rs.rho.clone(), c.rs.theta.scale(&qr(1, 3)), c.rs.fund_weights[0].clone()] {
                assert_eq!(fock_exponent(&nu, &c), fock_delta(&nu, &c) - &bos / qi(24) + &r / qi(24));
            }
        }
    }

    #[test]
    fn weight_space_examples() {
        let c = case("A1", Variant::NonSuper, 2);
        let z = c.lambda_zero();
        let s = weight_space_char(&z, &WeightVec::zero(1), &c, CharKind::Ch, 5).unwrap();
        assert_eq!(*s.base(), qr(1, 8) - qr(1, 24));
        assert_eq!(s.coeffs(), &ints(&[1, 1, 2, 3, 5, 7])[..]);
        let a = c.rs.simple_roots[0].clone();
        let s = weight_space_char(&z, &-&a, &c, CharKind::Ch, 5).unwrap();
        assert_eq!(*s.base(), qr(9, 8) - qr(1, 24));
        assert!(weight_space_char(&z, &c.rs.fund_weights[0], &c, CharKind::Ch, 5).is_err());
    }

    #[test]
    fn triplet_vacuum() {
        let c = case("A1", Variant::NonSuper, 2);
        let z = c.lambda_zero();
        let s = multiplet_char(&WeightVec::zero(1), &z, &c, 6).unwrap();
        assert_eq!(*s.base(), qr(1, 12));
        assert_eq!(s.dense_coeffs(), ints(&[1, 0, 1, 1, 2, 2, 4]));
        assert_eq!(s, walg_vacuum_oracle(&c, 6).unwrap());
    }

    #[test]
    fn vacuum_matches_product_oracle() {
        for (t, v, m) in [
            ("A1", Variant::NonSuper, 3),
            ("A2", Variant::NonSuper, 2),
            ("B2", Variant::NonSuper, 2),
            ("G2", Variant::NonSuper, 3),
            ("B1", Variant::Super, 2),
            ("B1", Variant::Super, 3),
        ] {
            let c = case(t, v, m);
            let z = c.lambda_zero();
            let s = multiplet_char(&WeightVec::zero(c.rank()), &z, &c, 15).unwrap();
            assert_eq!(*s.base(), -&c.central_charge / qi(24), "{t}");
            assert_eq!(s, walg_vacuum_oracle(&c, 15).unwrap(), "{t} m={m}");
        }
        let c = case("B1", Variant::Super, 2);
        let z = c.lambda_zero();
        let s = multiplet_superchar(&WeightVec::zero(1), &z, &c, 15).unwrap();
        assert_eq!(s, walg_vacuum_superchar_oracle(&c, 15).unwrap());
        assert!(walg_vacuum_oracle(&case("B2", Variant::Super, 3), 5).is_err());
    }

    #[test]
    fn superchar_sign_and_parity() {
        let c = case("B1", Variant::Super, 2);
        assert_eq!(super_sign_exponent(&c, &WeightVec::zero(1)), BigInt::zero());
        let a = c.rs.simple_roots[0].clone();
        // |α|² = 1 here, so ⌊(−α, α)⌋ = −1
        assert_eq!(super_sign_exponent(&c, &-&a), BigInt::from(-1));
        for lam in c.enumerate_lambda() {
            for k in 0..3 {
                let al = a.scale_int(k);
                let ch = multiplet_series(&al, &lam, &c, CharKind::Ch, 20).unwrap();
                let sch = multiplet_superchar(&al, &lam, &c, 20).unwrap();
                let sum = ch.add(&sch).unwrap();
                assert!(sum.coeffs().iter().all(|x| (x % BigInt::from(2)).is_zero()), "{lam} {k}");
            }
        }
    }

    #[test]
    fn ramond_constants() {
        let c = case("B1", Variant::SuperRamond, 2);
        let k = RamondConstants::derive(&c).unwrap();
        assert_eq!(k.a, qr(1, 2));
        assert_eq!(k.c, qr(-1, 8));
        let c2 = case("B2", Variant::SuperRamond, 3);
        let k2 = RamondConstants::derive(&c2).unwrap();
        assert_eq!((k2.a.clone(), k2.b.clone()), (qi(1), qr(1, 2)));
        assert!(matches!(RamondConstants::derive(&case("B3", Variant::SuperRamond, 3)), Err(Error::Unsupported(_))));
        // the flow reproduces the twisted weight on lattice points
        for nu in [WeightVec::zero(1), c.rs.simple_roots[0].clone(), c.rs.fund_weights[0].scale(&qr(1, 3)), c.rs.simple_roots[0].scale_int(-2), c.rs.rho.clone()] {
            let flow = &nu + &c.rs.fund_weights[0].scale(&qr(1, 3));
            assert_eq!(ramond_delta(&nu, &c, &k), fock_delta(&flow, &c) + qr(1, 16));
        }
    }

    #[test]
    fn ramond_vacuum_sector() {
        let c = case("B1", Variant::SuperRamond, 2);
        let z = c.lambda_zero();
        let s = multiplet_ramond_char(&WeightVec::zero(1), &z, &c, 20).unwrap();
        // lowest Ramond weight −1/16, c = −5/2
        assert_eq!(*s.base(), qr(-1, 16) + qr(5, 48));
        assert!(s.coeffs().iter().all(|x| (x % BigInt::from(2)).is_zero()));
        assert!(s.is_nonnegative());
        assert_eq!(multiplet_char(&WeightVec::zero(1), &z, &c, 20).unwrap(), s);
    }

    #[test]
    fn wall_and_antisymmetry() {
        let c = case("A2", Variant::NonSuper, 2);
        let z = c.lambda_zero();
        let mut walls = 0;
        for a in -3..=3 {
            for b in -3..=3 {
                let beta = WeightVec::from_ints(&[a, b]);
                let shifted = &beta + &c.rs.rho;
                let on_wall = c.rs.positive_roots.iter().any(|r| c.rs.pair(&shifted, &c.rs.coroot(r)).is_zero());
                let f = alternating_sum(&z, &beta, &c, CharKind::Ch, 10).unwrap();
                if on_wall {
                    walls += 1;
                    assert!(f.is_zero());
                } else {
                    for tau in c.weyl.elements() {
                        let g = alternating_sum(&z, &dot(&c, tau, &beta), &c, CharKind::Ch, 10).unwrap();
                        let expect = if tau.sign() == 1 { f.clone() } else { f.neg() };
                        assert_eq!(g.truncate(f.precision()), expect.truncate(g.precision()));
                    }
                }
            }
        }
        assert!(walls > 0);
    }

    #[test]
    fn wall_sweeps() {
        for (t, v, m) in [("A2", Variant::NonSuper, 2), ("B2", Variant::Super, 2)] {
            let c = case(t, v, m);
            for lam in c.enumerate_lambda().into_iter().take(3) {
                let rep = wall_scan(&c, &lam, 2, 6).unwrap();
                assert!(rep.passed(), "{:?}", rep.failures);
                assert!(rep.walls > 0 && rep.antisymmetry_checks > 0);
            }
        }
    }

    #[test]
    fn two_forms_agree() {
        for (t, v, m) in [("A2", Variant::NonSuper, 2), ("B2", Variant::NonSuper, 2), ("G2", Variant::NonSuper, 1), ("B2", Variant::Super, 2)] {
            let c = case(t, v, m);
            for lam in c.enumerate_lambda() {
                for h in 0..=3 {
                    for alpha in dominant_root_lattice_level(&c, h) {
                        multiplet_numerator(&alpha, &lam, &c, CharKind::Ch).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn positivity_for_strong_lambda() {
        for (t, v, m) in [("A1", Variant::NonSuper, 2), ("A2", Variant::NonSuper, 3), ("B2", Variant::NonSuper, 2), ("B2", Variant::Super, 3)] {
            let c = case(t, v, m);
            for lam in c.enumerate_lambda().into_iter().filter(|l| c.alcove_inequality(l)) {
                for h in 0..=3 {
                    for alpha in dominant_root_lattice_level(&c, h) {
                        let s = multiplet_char(&alpha, &lam, &c, 12).unwrap();
                        assert!(s.is_nonnegative(), "{t} {lam} {alpha}: {s}");
                        assert!(!s.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn ft_character_rank_one() {
        let c = case("A1", Variant::NonSuper, 2);
        let z = c.lambda_zero();
        let s = ft_char(&z, &c, CharKind::Ch, 8).unwrap();
        assert_eq!(*s.base(), qr(1, 12));
        let cap = s.precision().clone();
        let mut expect = QSeries::zero(cap.clone());
        for n in 0..6 {
            let a = c.rs.simple_roots[0].scale_int(n);
            let mut w = multiplet_char(&a, &z, &c, 20).unwrap().truncate(&cap);
            w = w.scale(&BigInt::from(2 * n + 1));
            expect = expect.add(&w).unwrap();
        }
        assert_eq!(s, expect);
        assert!(s.is_nonnegative());
    }

    #[test]
    fn verma_identity() {
        for m in 1..=3 {
            for t in ["B1", "B2"] {
                let c = case(t, Variant::Super, m);
                for lam in c.enumerate_lambda() {
                    for h in 0..=2 {
                        for alpha in dominant_root_lattice_level(&c, h) {
                            let mu = (&lam.value - &alpha).scale(&qi(c.p));
                            let beta = &alpha + &lam.bullet_up;
                            let a = verma_char_super(&mu, &c, 10).unwrap();
                            let b = weight_space_char(&lam, &beta, &c, CharKind::Ch, 10).unwrap();
                            assert_eq!(a, b);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dominant_levels() {
        let c = case("A2", Variant::NonSuper, 2);
        assert_eq!(dominant_root_lattice_level(&c, 0).len(), 1);
        assert!(dominant_root_lattice_level(&c, 1).is_empty());
        assert_eq!(dominant_root_lattice_level(&c, 2), vec![WeightVec::from_ints(&[1, 1])]);
        assert_eq!(dominant_root_lattice_level(&c, 3).len(), 2);
    }
}
