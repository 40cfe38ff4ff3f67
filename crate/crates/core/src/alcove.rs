//! Affine Weyl groups and the alcove reduction behind the Kazhdan-Lusztig
//! type decompositions.
//!
//! Two families share one implementation:
//! * untwisted (non-super cases): the affine Weyl group of the Langlands dual,
//!   W ⋉ r∨Q, with ρ̂ = ρ∨ + ᴸh∨Λ0;
//! * twisted (super cases, type A_{2r}^{(2)}): W ⋉ Q with ρ̂ = ρ + (2r+1)Λ0^c,
//!   levels counted in units of Λ0^c.
//!
//! In both, t_τ moves the finite part of a weight of level k by kτ, so after
//! adding ρ̂ the reduction is a walk modulo W ⋉ pQ into
//! {x : 0 ≤ (x, α∨) ≤ p for every positive root α}.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::characters::dot;
use crate::error::{Error, Result};
use crate::liealg::{identity_mat, mat_apply, mat_mul, IntMat, WeightVec, WeylElement};
use crate::rational::{qi, ser_q, to_i64, Q};
use crate::shift::{LambdaParam, ShiftCase};

const WALK_LIMIT: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Untwisted,
    Twisted,
}

impl Family {
    pub fn of(c: &ShiftCase) -> Self {
        if c.variant.is_super() {
            Family::Twisted
        } else {
            Family::Untwisted
        }
    }
}

/// μ + kΛ0 + dδ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineWeight {
    pub finite: WeightVec,
    #[serde(serialize_with = "ser_q")]
    pub level: Q,
    #[serde(serialize_with = "ser_q")]
    pub delta_coeff: Q,
}

impl AffineWeight {
    pub fn new(finite: WeightVec, level: Q) -> Self {
        AffineWeight { finite, level, delta_coeff: Q::zero() }
    }

    pub fn add(&self, o: &Self) -> Self {
        AffineWeight {
            finite: &self.finite + &o.finite,
            level: &self.level + &o.level,
            delta_coeff: &self.delta_coeff + &o.delta_coeff,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        AffineWeight {
            finite: &self.finite - &o.finite,
            level: &self.level - &o.level,
            delta_coeff: &self.delta_coeff - &o.delta_coeff,
        }
    }
}

/// σ t_τ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineWeylElt {
    #[serde(rename = "word")]
    pub finite_part: WeylElement,
    pub translation: WeightVec,
}

/// Outcome of a chamber reduction: w ∘ μ̂ = ν̂.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub w: AffineWeylElt,
    pub reduced: AffineWeight,
    /// ν̂ + ρ̂ lies on a wall, where w need not be unique.
    pub on_wall: bool,
}

/// The affine data of one case.
#[derive(Clone, Debug)]
pub struct AffineSystem<'a> {
    pub case: &'a ShiftCase,
    pub family: Family,
    /// Translations lie in scale·Q.
    pub scale: i64,
    pub rho_hat: AffineWeight,
    theta_s_mat: IntMat,
}

impl<'a> AffineSystem<'a> {
    pub fn new(c: &'a ShiftCase) -> Self {
        let rs = &c.rs;
        let family = Family::of(c);
        let (scale, rho_hat) = match family {
            Family::Untwisted => (rs.lacing, AffineWeight::new(rs.rho_check.clone(), qi(rs.dual_coxeter_l))),
            Family::Twisted => (1, AffineWeight::new(rs.rho.clone(), qi(2 * rs.rank() as i64 + 1))),
        };
        let g = &rs.theta_s;
        let gco = rs.coroot(g);
        let r = rs.rank();
        let gi = g.to_ints().expect("roots are integral");
        let mut m = identity_mat(r);
        for j in 0..r {
            let k = to_i64(&rs.pair(&rs.simple_roots[j], &gco)).unwrap();
            for (i, gv) in gi.iter().enumerate() {
                m[i][j] -= k * gv;
            }
        }
        AffineSystem { case: c, family, scale, rho_hat, theta_s_mat: m }
    }

    pub fn identity(&self) -> AffineWeylElt {
        AffineWeylElt { finite_part: WeylElement::identity(self.case.rank()), translation: WeightVec::zero(self.case.rank()) }
    }

    fn element(&self, m: &IntMat) -> WeylElement {
        let w = &self.case.weyl;
        w.get(w.index_of(m).expect("W is closed")).clone()
    }

    pub fn in_translation_lattice(&self, tau: &WeightVec) -> bool {
        tau.scale(&(Q::one() / qi(self.scale))).in_root_lattice()
    }

    pub fn make(&self, sigma: WeylElement, tau: WeightVec) -> Result<AffineWeylElt> {
        if !self.in_translation_lattice(&tau) {
            return Err(Error::NotInTranslationLattice(tau.to_string()));
        }
        Ok(AffineWeylElt { finite_part: sigma, translation: tau })
    }

    pub fn translation(&self, tau: WeightVec) -> Result<AffineWeylElt> {
        self.make(WeylElement::identity(self.case.rank()), tau)
    }

    fn inverse_mat(&self, sigma: &WeylElement) -> IntMat {
        let w = &self.case.weyl;
        let idx = w.index_of(&sigma.action).unwrap();
        w.get(w.inverse(idx)).action.clone()
    }

    /// (σt_τ)(σ't_τ') = σσ' t_{σ'^{-1}τ + τ'}.
    pub fn compose(&self, a: &AffineWeylElt, b: &AffineWeylElt) -> AffineWeylElt {
        let sigma = self.element(&mat_mul(&a.finite_part.action, &b.finite_part.action));
        let binv = self.inverse_mat(&b.finite_part);
        let tau = &mat_apply(&binv, &a.translation) + &b.translation;
        AffineWeylElt { finite_part: sigma, translation: tau }
    }

    /// (σt_τ)^{-1} = σ^{-1} t_{−στ}.
    pub fn inverse(&self, a: &AffineWeylElt) -> AffineWeylElt {
        let inv = self.element(&self.inverse_mat(&a.finite_part));
        AffineWeylElt { finite_part: inv, translation: -&a.finite_part.apply(&a.translation) }
    }

    /// Linear action: t_τ(μ + kΛ0 + dδ) = μ + kτ + kΛ0 + (d − (μ,τ) − k|τ|²/2)δ,
    /// then σ on the finite part.
    pub fn apply(&self, w: &AffineWeylElt, mu: &AffineWeight) -> AffineWeight {
        let rs = &self.case.rs;
        let tau = &w.translation;
        let k = &mu.level;
        let moved = &mu.finite + &tau.scale(k);
        let d = &mu.delta_coeff - rs.pair(&mu.finite, tau) - rs.norm2(tau) * k / qi(2);
        AffineWeight { finite: w.finite_part.apply(&moved), level: k.clone(), delta_coeff: d }
    }

    /// w ∘ μ̂ = w(μ̂ + ρ̂) − ρ̂.
    pub fn dot_act(&self, w: &AffineWeylElt, mu: &AffineWeight) -> AffineWeight {
        self.apply(w, &mu.add(&self.rho_hat)).sub(&self.rho_hat)
    }

    /// Walks μ̂ + ρ̂ into the closed fundamental chamber.
    pub fn dominant_reduce(&self, mu: &AffineWeight) -> Result<Reduction> {
        let rs = &self.case.rs;
        let r = rs.rank();
        let shifted = mu.add(&self.rho_hat);
        let k = shifted.level.clone();
        if !k.is_positive() {
            return Err(Error::InvalidCase(format!("level {k} of μ̂ + ρ̂ must be positive")));
        }
        let bound = &k * qi(self.scale);
        let gamma = &rs.theta_s;
        let lth = &rs.theta_l;
        let mut x = shifted.finite.clone();
        let mut sig = identity_mat(r);
        let mut sig_inv = identity_mat(r);
        let mut tau = WeightVec::zero(r);
        for _ in 0..WALK_LIMIT {
            if let Some(i) = (0..r).find(|&i| rs.copair(&x, i).is_negative()) {
                x = rs.reflect_unchecked(i, &x);
                let s = self.case.weyl.simple_mat(i);
                sig = mat_mul(s, &sig);
                sig_inv = mat_mul(&sig_inv, s);
                continue;
            }
            let v = rs.pair(&x, lth);
            if v > bound {
                // s_γ t_{−sγ}
                x = &x - &gamma.scale(&(&v - &bound));
                let t0 = gamma.scale_int(-self.scale);
                tau = &mat_apply(&sig_inv, &t0) + &tau;
                sig = mat_mul(&self.theta_s_mat, &sig);
                sig_inv = mat_mul(&sig_inv, &self.theta_s_mat);
                continue;
            }
            let on_wall = (0..r).any(|i| rs.copair(&x, i).is_zero()) || v == bound;
            let w = self.make(self.element(&sig), tau)?;
            let reduced = self.dot_act(&w, mu);
            if reduced.add(&self.rho_hat).finite != x {
                return Err(Error::Inconsistent("alcove walk bookkeeping".into()));
            }
            return Ok(Reduction { w, reduced, on_wall });
        }
        Err(Error::Inconsistent("alcove walk did not terminate".into()))
    }

    /// True when μ̂ + ρ̂ lies in the closed chamber.
    pub fn in_chamber(&self, mu: &AffineWeight) -> bool {
        let rs = &self.case.rs;
        let s = mu.add(&self.rho_hat);
        let bound = &s.level * qi(self.scale);
        (0..rs.rank()).all(|i| !rs.copair(&s.finite, i).is_negative()) && rs.pair(&s.finite, &rs.theta_l) <= bound
    }

    /// −p(α+λ•+ρ) + pλ_• (untwisted; ρ∨ in place of ρ when twisted) at the
    /// level that puts μ̂ + ρ̂ at level m (resp. p in Λ0^c units).
    pub fn mu_hat_zero(&self, alpha: &WeightVec, lam: &LambdaParam) -> AffineWeight {
        let c = self.case;
        let p = qi(c.p);
        let shift = match self.family {
            Family::Untwisted => &c.rs.rho,
            Family::Twisted => &c.rs.rho_check,
        };
        let beta = &(alpha + &lam.bullet_up) + shift;
        let finite = &lam.lower.scale(&p) - &beta.scale(&p);
        let total = match self.family {
            Family::Untwisted => qi(c.m),
            Family::Twisted => p,
        };
        AffineWeight::new(finite, total - &self.rho_hat.level)
    }

    /// y_{α,λ•} = w^{-1} and μ_λ = w ∘ μ̂_0 for a single λ.
    pub fn y_alpha_for(&self, alpha: &WeightVec, lam: &LambdaParam) -> Result<AlcoveData> {
        let red = self.dominant_reduce(&self.mu_hat_zero(alpha, lam))?;
        Ok(AlcoveData { y: self.inverse(&red.w), mu_lambda: red.reduced, on_wall: red.on_wall })
    }

    /// Whether y^{-1} carries μ̂_0 into the chamber, i.e. y is a valid choice
    /// of y_{α,λ•} for this λ (on walls several are).
    pub fn reduces(&self, y: &AffineWeylElt, alpha: &WeightVec, lam: &LambdaParam) -> bool {
        self.in_chamber(&self.dot_act(&self.inverse(y), &self.mu_hat_zero(alpha, lam)))
    }

    /// y_{α,λ•} over every strong λ with the given λ•. Regular λ must all give
    /// the same element, which must also be valid on the wall cases.
    pub fn y_alpha(&self, alpha: &WeightVec, bullet_idx: usize) -> Result<YScan> {
        let c = self.case;
        let strong: Vec<LambdaParam> = c
            .enumerate_lambda()
            .into_iter()
            .filter(|l| l.bullet_idx == bullet_idx && c.alcove_inequality(l))
            .collect();
        let mut found: Option<AffineWeylElt> = None;
        let mut first_wall = None;
        let (mut regular, mut walls) = (0, 0);
        for lam in &strong {
            let d = self.y_alpha_for(alpha, lam)?;
            if d.on_wall {
                walls += 1;
                first_wall.get_or_insert(d.y);
                continue;
            }
            regular += 1;
            match &found {
                None => found = Some(d.y),
                Some(f) if *f != d.y => {
                    return Err(Error::Inconsistent(format!("y_(α,λ•) depends on λ_• at α = {alpha}, λ = {lam}")))
                }
                _ => {}
            }
        }
        let y = found.or(first_wall).ok_or_else(|| Error::InvalidCase("no strong λ with this λ•".into()))?;
        if let Some(lam) = strong.iter().find(|l| !self.reduces(&y, alpha, l)) {
            return Err(Error::Inconsistent(format!("y_(α,λ•) fails to reduce α = {alpha}, λ = {lam}")));
        }
        Ok(YScan { y, regular, walls })
    }

    /// Shortest σ with σ(ϖ_r) = −ϖ_r; for B1 this is σ_1.
    pub fn spin_flip(&self) -> WeylElement {
        let rs = &self.case.rs;
        let w = &rs.fund_weights[rs.rank() - 1];
        let target = -w;
        self.case
            .weyl
            .elements()
            .iter()
            .filter(|s| s.apply(w) == target)
            .min_by_key(|s| s.length)
            .expect("w0 = −1 in type B")
            .clone()
    }

    /// t_{−α−ρ∨} for λ• = 0 and t_{−α−ρ∨}σ_• for λ• = ϖ_r (twisted family),
    /// σ_• as in [`Self::spin_flip`].
    pub fn closed_form_y(&self, alpha: &WeightVec, bullet_idx: usize) -> Result<AffineWeylElt> {
        if self.family != Family::Twisted {
            return Err(Error::Unsupported("closed forms are available for the twisted family".into()));
        }
        let r = self.case.rank();
        let t = self.translation(-&(alpha + &self.case.rs.rho_check))?;
        match bullet_idx {
            0 => Ok(t),
            1 => {
                let s = self.make(self.spin_flip(), WeightVec::zero(r))?;
                Ok(self.compose(&t, &s))
            }
            _ => Err(Error::InvalidLambda(format!("minuscule index {bullet_idx}"))),
        }
    }

    /// t_{−α−ρ∨}σ_r for λ• = ϖ_r; agrees with [`Self::closed_form_y`] only in rank one.
    pub fn simple_form_y(&self, alpha: &WeightVec, bullet_idx: usize) -> Result<AffineWeylElt> {
        if bullet_idx != 1 {
            return self.closed_form_y(alpha, bullet_idx);
        }
        let r = self.case.rank();
        let t = self.translation(-&(alpha + &self.case.rs.rho_check))?;
        let sr = self.make(self.element(self.case.weyl.simple_mat(r - 1)), WeightVec::zero(r))?;
        Ok(self.compose(&t, &sr))
    }

    /// y_σ = t_{s(β − σ∘β)} y_{α,λ•} with β = α + λ•.
    pub fn y_sigma(&self, sigma: &WeylElement, alpha: &WeightVec, lam: &LambdaParam, y: &AffineWeylElt) -> Result<AffineWeylElt> {
        let beta = alpha + &lam.bullet_up;
        let diff = &beta - &dot(self.case, sigma, &beta);
        let t = self.translation(diff.scale_int(self.scale))?;
        Ok(self.compose(&t, y))
    }

    /// Verma parameter of y ∘ μ_λ: its finite part plus pρ (untwisted) or
    /// pρ∨ (twisted).
    pub fn verma_parameter(&self, y: &AffineWeylElt, mu_lambda: &AffineWeight) -> WeightVec {
        let c = self.case;
        let shift = match self.family {
            Family::Untwisted => &c.rs.rho,
            Family::Twisted => &c.rs.rho_check,
        };
        &self.dot_act(y, mu_lambda).finite + &shift.scale(&qi(c.p))
    }

    /// W y = W y' (equality of right cosets modulo W).
    pub fn same_coset(&self, a: &AffineWeylElt, b: &AffineWeylElt) -> bool {
        self.compose(a, &self.inverse(b)).translation.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YScan {
    pub y: AffineWeylElt,
    /// Strong λ off the walls, all of which produced y.
    pub regular: usize,
    pub walls: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndependenceRow {
    pub alpha: WeightVec,
    pub lambda_bullet: usize,
    pub y: Option<AffineWeylElt>,
    pub regular: usize,
    pub walls: usize,
    /// Twisted family: y equals t_{−α−ρ∨}σ_• (resp. t_{−α−ρ∨}).
    pub closed_form: Option<bool>,
    /// Twisted family: y equals t_{−α−ρ∨}σ_r (resp. t_{−α−ρ∨}).
    pub simple_form: Option<bool>,
    pub error: Option<String>,
}

impl IndependenceRow {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.closed_form != Some(false)
    }
}

/// y_{α,λ•} for every dominant α ∈ Q of height ≤ `max_height` and every λ•
/// that has a strong λ.
pub fn independence_scan(c: &ShiftCase, max_height: i64) -> Vec<IndependenceRow> {
    use rayon::prelude::*;
    let a = AffineSystem::new(c);
    let bullets: Vec<usize> = (0..c.rs.minuscule.len())
        .filter(|b| c.enumerate_lambda().iter().any(|l| l.bullet_idx == *b && c.alcove_inequality(l)))
        .collect();
    let jobs: Vec<(WeightVec, usize)> = (0..=max_height)
        .flat_map(|h| crate::characters::dominant_root_lattice_level(c, h))
        .flat_map(|al| bullets.iter().map(move |&b| (al.clone(), b)))
        .collect();
    jobs.into_par_iter()
        .map(|(alpha, b)| {
            let mut row = IndependenceRow {
                alpha: alpha.clone(),
                lambda_bullet: b,
                y: None,
                regular: 0,
                walls: 0,
                closed_form: None,
                simple_form: None,
                error: None,
            };
            match a.y_alpha(&alpha, b) {
                Ok(scan) => {
                    if a.family == Family::Twisted {
                        let strong: Vec<LambdaParam> =
                            c.enumerate_lambda().into_iter().filter(|l| l.bullet_idx == b && c.alcove_inequality(l)).collect();
                        let fits = |y: &AffineWeylElt| {
                            *y == scan.y || (scan.regular == 0 && strong.iter().all(|l| a.reduces(y, &alpha, l)))
                        };
                        row.closed_form = a.closed_form_y(&alpha, b).ok().map(|y| fits(&y));
                        row.simple_form = a.simple_form_y(&alpha, b).ok().map(|y| fits(&y));
                    }
                    row.y = Some(scan.y);
                    row.regular = scan.regular;
                    row.walls = scan.walls;
                }
                Err(e) => row.error = Some(e.to_string()),
            }
            row
        })
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VermaReport {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl VermaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For each λ, each dominant α ∈ Q of height ≤ `max_height` and each σ ∈ W:
/// the Verma parameter of y_σ ∘ μ_λ is p(λ_• − σ∘β), and its character equals
/// the weight-space character at σ∘β. With `direct_only`, just σ = e via
/// p(λ − α).
pub fn verma_scan(
    c: &ShiftCase,
    lambdas: &[LambdaParam],
    max_height: i64,
    order: usize,
    direct_only: bool,
) -> Result<VermaReport> {
    use crate::characters::{verma_char, weight_space_char, CharKind};
    let a = AffineSystem::new(c);
    let kind = CharKind::Ch;
    let p = qi(c.p);
    let mut rep = VermaReport::default();
    for lam in lambdas {
        for h in 0..=max_height {
            for alpha in crate::characters::dominant_root_lattice_level(c, h) {
                let beta = &alpha + &lam.bullet_up;
                if direct_only {
                    let mu = (&lam.value - &alpha).scale(&p);
                    let lhs = verma_char(&mu, c, kind, order)?;
                    let rhs = weight_space_char(lam, &beta, c, kind, order)?;
                    rep.checks += 1;
                    if lhs != rhs {
                        rep.failures.push(format!("λ = {lam}, α = {alpha}: {lhs} ≠ {rhs}"));
                    }
                    continue;
                }
                let d = a.y_alpha_for(&alpha, lam)?;
                for sigma in c.weyl.elements() {
                    let y = a.y_sigma(sigma, &alpha, lam, &d.y)?;
                    let param = a.verma_parameter(&y, &d.mu_lambda);
                    let sb = dot(c, sigma, &beta);
                    rep.checks += 1;
                    if param != (&lam.lower - &sb).scale(&p) {
                        rep.failures.push(format!("λ = {lam}, α = {alpha}, σ = {:?}: parameter {param}", sigma.word_1based()));
                        continue;
                    }
                    let lhs = verma_char(&param, c, kind, order)?;
                    let rhs = weight_space_char(lam, &sb, c, kind, order)?;
                    if lhs != rhs {
                        rep.failures.push(format!("λ = {lam}, α = {alpha}, σ = {:?}: {lhs} ≠ {rhs}", sigma.word_1based()));
                    }
                }
            }
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlcoveData {
    pub y: AffineWeylElt,
    pub mu_lambda: AffineWeight,
    pub on_wall: bool,
}
