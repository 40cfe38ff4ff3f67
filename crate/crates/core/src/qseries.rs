//! Truncated formal series q^{Δ0}·Σ aₙ q^{n/D} with exact rational base and
//! big-integer coefficients.
//!
//! A series records its precision as an absolute exponent `P`: every
//! coefficient of q^e with e ≤ P is known. Arithmetic propagates the
//! precision and never extends it. Series are kept canonical: the leading
//! coefficient is nonzero (or the series is the zero series with base 0) and
//! the grid is the coarsest one carrying all nonzero terms. Trailing zeros
//! up to the precision are implicit.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{floor_q, parse_q, qi, qr, Q};

/// Default for the largest exponent grid any operation may produce.
pub const GRID_BOUND: u64 = 10_000;

static GRID_LIMIT: AtomicU64 = AtomicU64::new(GRID_BOUND);

/// Process-wide override of [`GRID_BOUND`].
pub fn set_grid_bound(b: u64) {
    GRID_LIMIT.store(b.max(1), Ordering::Relaxed);
}

pub fn grid_bound() -> u64 {
    GRID_LIMIT.load(Ordering::Relaxed)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    base: Q,
    grid: u64,
    coeffs: Vec<BigInt>,
    prec: Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FermionKind {
    /// ch F = η(q)²/(η(q²)η(q^{1/2}))
    NsCh,
    /// sch F = η(q^{1/2})/η(q)
    NsSch,
    /// ch ι*F = 2η(q²)/η(q)
    RTwisted,
}

fn grid_check(d: u64) -> Result<u64> {
    let b = grid_bound();
    if d > b {
        Err(Error::GridBound(d, b))
    } else {
        Ok(d)
    }
}

fn den_u64(x: &Q) -> Result<u64> {
    x.denom().to_u64().ok_or(Error::GridBound(u64::MAX, grid_bound()))
}

impl QSeries {
    /// The zero series, known up to q^{prec}.
    pub fn zero(prec: Q) -> Self {
        QSeries { base: Q::zero(), grid: 1, coeffs: vec![], prec }
    }

    /// 1 + O(q^{prec}).
    pub fn one(prec: Q) -> Self {
        Self::monomial(BigInt::one(), Q::zero(), prec)
    }

    pub fn monomial(c: BigInt, exp: Q, prec: Q) -> Self {
        let grid = 1;
        Self::normalize(exp, grid, vec![c], prec)
    }

    /// Series from dense coefficients. The precision is clamped to the last
    /// supplied coefficient.
    pub fn new(base: Q, grid: u64, coeffs: Vec<BigInt>, prec: Q) -> Result<Self> {
        if grid == 0 {
            return Err(Error::Parse("grid must be positive".into()));
        }
        grid_check(grid)?;
        let mut prec = prec;
        if !coeffs.is_empty() {
            let last = &base + Q::new(BigInt::from(coeffs.len() as u64 - 1), BigInt::from(grid));
            if last < prec {
                prec = last;
            }
        } else if prec >= base {
            return Err(Error::Parse("no coefficients supplied".into()));
        }
        Ok(Self::normalize(base, grid, coeffs, prec))
    }

    /// Series from sparse terms; every unlisted exponent up to `prec` is zero.
    pub fn from_terms<I: IntoIterator<Item = (Q, BigInt)>>(terms: I, prec: Q) -> Result<Self> {
        let terms: Vec<(Q, BigInt)> = terms.into_iter().filter(|(e, c)| !c.is_zero() && *e <= prec).collect();
        if terms.is_empty() {
            return Ok(Self::zero(prec));
        }
        let base = terms.iter().map(|(e, _)| e.clone()).min().unwrap();
        let mut grid = 1u64;
        for (e, _) in &terms {
            grid = grid.lcm(&den_u64(&(e - &base))?);
            grid_check(grid)?;
        }
        let n = floor_q(&((&prec - &base) * qi(grid as i64))).to_usize().unwrap();
        let mut coeffs = vec![BigInt::zero(); n + 1];
        for (e, c) in terms {
            let k = ((e - &base) * qi(grid as i64)).to_integer().to_usize().unwrap();
            coeffs[k] += c;
        }
        Ok(Self::normalize(base, grid, coeffs, prec))
    }

    fn normalize(base: Q, grid: u64, mut coeffs: Vec<BigInt>, prec: Q) -> Self {
        if prec < base {
            return Self::zero(prec);
        }
        let n_max = floor_q(&((&prec - &base) * qi(grid as i64))).to_usize().unwrap();
        coeffs.truncate(n_max + 1);
        let Some(first) = coeffs.iter().position(|c| !c.is_zero()) else {
            return Self::zero(prec);
        };
        let base = base + Q::new(BigInt::from(first), BigInt::from(grid));
        coeffs.drain(..first);
        let mut g = grid;
        for (i, c) in coeffs.iter().enumerate() {
            if g == 1 {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(&(i as u64));
            }
        }
        if g > 1 {
            let n = floor_q(&((&prec - &base) * qi((grid / g) as i64))).to_usize().unwrap();
            coeffs = (0..=n).map(|k| coeffs.get(k * g as usize).cloned().unwrap_or_default()).collect();
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QSeries { base, grid: grid / g, coeffs, prec }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn base(&self) -> &Q {
        &self.base
    }
    pub fn grid(&self) -> u64 {
        self.grid
    }
    /// Stored coefficients; entries past the end are zero up to the precision.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// All coefficients from the base through the precision.
    pub fn dense_coeffs(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return vec![];
        }
        let mut c = self.coeffs.clone();
        c.resize(self.order() as usize + 1, BigInt::zero());
        c
    }
    /// Absolute exponent through which the series is known.
    pub fn precision(&self) -> &Q {
        &self.prec
    }
    /// Truncation order N in grid units relative to the base.
    pub fn order(&self) -> i64 {
        floor_q(&((&self.prec - &self.base) * qi(self.grid as i64))).to_i64().unwrap()
    }

    fn step(&self) -> Q {
        Q::new(BigInt::one(), BigInt::from(self.grid))
    }

    /// Nonzero terms as (exponent, coefficient).
    pub fn terms(&self) -> Vec<(Q, BigInt)> {
        let step = self.step();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (&self.base + &step * qi(i as i64), c.clone()))
            .collect()
    }

    /// Coefficient of q^e, or `None` beyond the precision.
    pub fn coeff(&self, e: &Q) -> Option<BigInt> {
        if *e > self.prec {
            return None;
        }
        if self.is_zero() || *e < self.base {
            return Some(BigInt::zero());
        }
        let k = (e - &self.base) * qi(self.grid as i64);
        if !k.is_integer() {
            return Some(BigInt::zero());
        }
        Some(self.coeffs.get(k.to_integer().to_usize().unwrap()).cloned().unwrap_or_default())
    }

    /// Coefficients on the integer-spaced exponents base, base+1, … .
    pub fn integer_steps(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return vec![];
        }
        let n = floor_q(&(&self.prec - &self.base)).to_i64().unwrap();
        (0..=n).map(|k| self.coeff(&(&self.base + qi(k))).unwrap()).collect()
    }

    pub fn leading_exponent(&self) -> Option<&Q> {
        if self.is_zero() {
            None
        } else {
            Some(&self.base)
        }
    }

    /// Drops everything above q^{prec}.
    pub fn truncate(&self, prec: &Q) -> Self {
        if *prec >= self.prec {
            return self.clone();
        }
        Self::normalize(self.base.clone(), self.grid, self.coeffs.clone(), prec.clone())
    }

    /// Coefficients spread onto a finer grid `d` (a multiple of the grid).
    fn spread(&self, d: u64) -> Vec<BigInt> {
        let k = (d / self.grid) as usize;
        if k == 1 {
            return self.coeffs.clone();
        }
        let mut out = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        out
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let prec = (&self.prec).min(&o.prec).clone();
        if self.is_zero() {
            return Ok(o.truncate(&prec));
        }
        if o.is_zero() {
            return Ok(self.truncate(&prec));
        }
        let base = (&self.base).min(&o.base).clone();
        let d = grid_check(self.grid.lcm(&o.grid).lcm(&den_u64(&(&self.base - &o.base))?))?;
        if prec < base {
            return Ok(Self::zero(prec));
        }
        let n = floor_q(&((&prec - &base) * qi(d as i64))).to_usize().unwrap();
        let mut out = vec![BigInt::zero(); n + 1];
        for s in [self, o] {
            let off = ((&s.base - &base) * qi(d as i64)).to_integer().to_usize().unwrap();
            for (i, c) in s.spread(d).into_iter().enumerate() {
                if off + i > n {
                    break;
                }
                out[off + i] += c;
            }
        }
        Ok(Self::normalize(base, d, out, prec))
    }

    pub fn neg(&self) -> Self {
        QSeries {
            base: self.base.clone(),
            grid: self.grid,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            prec: self.prec.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    /// First exponent that may carry a nonzero coefficient.
    fn lead(&self) -> &Q {
        if self.is_zero() {
            &self.prec
        } else {
            &self.base
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let prec = (&self.prec + o.lead()).min(&o.prec + self.lead());
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero(prec));
        }
        let base = &self.base + &o.base;
        if prec < base {
            return Ok(Self::zero(prec));
        }
        let d = grid_check(self.grid.lcm(&o.grid))?;
        let n = floor_q(&((&prec - &base) * qi(d as i64))).to_usize().unwrap();
        let out = convolve(&self.spread(d), &o.spread(d), n);
        Ok(Self::normalize(base, d, out, prec))
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        if n == 0 {
            return Ok(Self::one(&self.prec - self.lead()));
        }
        let mut acc = self.clone();
        let mut b = self.clone();
        let mut e = n - 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b)?;
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b)?;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.prec.clone());
        }
        QSeries {
            base: self.base.clone(),
            grid: self.grid,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            prec: self.prec.clone(),
        }
    }

    /// Multiplication by a rational, which must keep every coefficient integral.
    pub fn scale_rational(&self, c: &Q) -> Result<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            let y = Q::from_integer(x.clone()) * c;
            if !y.is_integer() {
                return Err(Error::NonIntegral(y.to_string()));
            }
            out.push(y.to_integer());
        }
        Ok(Self::normalize(self.base.clone(), self.grid, out, self.prec.clone()))
    }

    /// Multiplication by q^δ.
    pub fn qshift(&self, delta: &Q) -> Self {
        let mut s = self.clone();
        if !s.is_zero() {
            s.base += delta;
        }
        s.prec += delta;
        s
    }

    /// The substitution q → q^t for a positive rational t.
    pub fn resample(&self, t: &Q) -> Result<Self> {
        if !t.is_positive() {
            return Err(Error::Parse(format!("resample factor {t} must be positive")));
        }
        if self.is_zero() {
            return Ok(Self::zero(&self.prec * t));
        }
        let a = t.numer().to_usize().ok_or(Error::GridBound(u64::MAX, grid_bound()))?;
        let b = den_u64(t)?;
        let d = grid_check(self.grid * b)?;
        let mut out = vec![BigInt::zero(); (self.coeffs.len() - 1) * a + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * a] = c.clone();
        }
        Ok(Self::normalize(&self.base * t, d, out, &self.prec * t))
    }

    /// True when every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 + O(q^{{{}}})", self.prec);
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = Q::new(BigInt::from(i), BigInt::from(self.grid));
            let mono = if e.is_zero() {
                String::new()
            } else if e.is_one() {
                "q".to_string()
            } else {
                format!("q^{{{e}}}")
            };
            let coef = if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                String::new()
            } else if *c == -BigInt::one() {
                "-".to_string()
            } else {
                c.to_string()
            };
            parts.push(format!("{coef}{mono}"));
        }
        let body = parts.join(" + ").replace("+ -", "- ");
        write!(f, "q^{{{}}}({}) + O(q^{{{}}})", self.base, body, self.prec)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    base: String,
    grid: u64,
    coeffs: Vec<String>,
    order: i64,
    precision: String,
}

impl Serialize for QSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson {
            base: self.base.to_string(),
            grid: self.grid,
            coeffs: self.dense_coeffs().iter().map(|c| c.to_string()).collect(),
            order: self.order(),
            precision: self.prec.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = SeriesJson::deserialize(d)?;
        let base = parse_q(&j.base).map_err(D::Error::custom)?;
        let prec = parse_q(&j.precision).map_err(D::Error::custom)?;
        let coeffs = j
            .coeffs
            .iter()
            .map(|c| c.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if coeffs.is_empty() {
            return Ok(QSeries::zero(prec));
        }
        QSeries::new(base, j.grid, coeffs, prec).map_err(D::Error::custom)
    }
}

/// Truncated product of two dense coefficient vectors, keeping indices ≤ n.
pub fn convolve(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let a = &a[..a.len().min(n + 1)];
    let b = &b[..b.len().min(n + 1)];
    let nnz_a = a.iter().filter(|c| !c.is_zero()).count();
    let nnz_b = b.iter().filter(|c| !c.is_zero()).count();
    if nnz_a.min(nnz_b) <= 32 || nnz_a * nnz_b <= 1 << 14 {
        schoolbook(a, b, n)
    } else {
        kronecker(a, b, n)
    }
}

/// Direct O(nnz·N) product, iterating over the sparser operand.
pub fn schoolbook(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); (a.len() + b.len()).saturating_sub(1).min(n + 1)];
    let (s, d) = if a.iter().filter(|c| !c.is_zero()).count() <= b.iter().filter(|c| !c.is_zero()).count() {
        (a, b)
    } else {
        (b, a)
    };
    for (i, x) in s.iter().enumerate() {
        if i >= out.len() {
            break;
        }
        if x.is_zero() {
            continue;
        }
        let unit = x.magnitude().is_one();
        let neg = x.is_negative();
        for (j, y) in d.iter().enumerate().take(out.len() - i) {
            if y.is_zero() {
                continue;
            }
            if unit {
                if neg {
                    out[i + j] -= y;
                } else {
                    out[i + j] += y;
                }
            } else {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Product by Kronecker substitution: both vectors are packed into one big
/// integer with fixed-width slots, multiplied once, and unpacked.
pub fn kronecker(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let len = (a.len() + b.len()).saturating_sub(1).min(n + 1);
    let bits_a = a.iter().map(|c| c.bits()).max().unwrap_or(0);
    let bits_b = b.iter().map(|c| c.bits()).max().unwrap_or(0);
    if bits_a == 0 || bits_b == 0 || len == 0 {
        return vec![BigInt::zero(); len];
    }
    let m = a.len().min(b.len()) as u64;
    let k = bits_a + bits_b + (64 - m.leading_zeros() as u64) + 2;
    let slots = a.len() + b.len() - 1;
    let prod = pack(a, k) * pack(b, k);
    // Adding 2^{k-1} to every slot makes all digits nonnegative without carries.
    let mut offset = vec![0u32; ((slots as u64 * k) / 32 + 2) as usize];
    for i in 0..slots as u64 {
        let bit = i * k + k - 1;
        offset[(bit / 32) as usize] |= 1 << (bit % 32);
    }
    let shifted = prod + BigInt::from_biguint(Sign::Plus, BigUint::new(offset));
    let digits = shifted.magnitude().to_u32_digits();
    let half = BigInt::one() << (k - 1);
    (0..len).map(|i| extract(&digits, i as u64 * k, k) - &half).collect()
}

fn pack(v: &[BigInt], k: u64) -> BigInt {
    let words = ((v.len() as u64 * k) / 32 + 2) as usize;
    let mut pos = vec![0u32; words];
    let mut neg = vec![0u32; words];
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let buf = if c.is_negative() { &mut neg } else { &mut pos };
        let off = i as u64 * k;
        for (j, d) in c.magnitude().to_u32_digits().into_iter().enumerate() {
            let bit = off + 32 * j as u64;
            let w = (bit / 32) as usize;
            let s = bit % 32;
            buf[w] |= d << s;
            if s != 0 {
                buf[w + 1] |= d >> (32 - s);
            }
        }
    }
    BigInt::from_biguint(Sign::Plus, BigUint::new(pos)) - BigInt::from_biguint(Sign::Plus, BigUint::new(neg))
}

fn extract(digits: &[u32], off: u64, k: u64) -> BigInt {
    let nw = k.div_ceil(32) as usize;
    let get = |w: usize| digits.get(w).copied().unwrap_or(0);
    let mut out = vec![0u32; nw];
    for (j, o) in out.iter_mut().enumerate() {
        let bit = off + 32 * j as u64;
        let w = (bit / 32) as usize;
        let s = bit % 32;
        *o = get(w) >> s;
        if s != 0 {
            *o |= get(w + 1) << (32 - s);
        }
    }
    let rem = k - 32 * (nw as u64 - 1);
    if rem < 32 {
        out[nw - 1] &= (1u32 << rem) - 1;
    }
    BigInt::from_biguint(Sign::Plus, BigUint::new(out))
}

/// p(0..=n) by Euler's pentagonal recurrence.
pub fn partition_numbers(n: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n + 1];
    p[0] = BigInt::one();
    for m in 1..=n {
        let mut acc = BigInt::zero();
        let mut k = 1usize;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let mut t = p[m - g1].clone();
            if g2 <= m {
                t += &p[m - g2];
            }
            if k % 2 == 1 {
                acc += t;
            } else {
                acc -= t;
            }
            k += 1;
        }
        p[m] = acc;
    }
    p
}

/// Π(1−qⁿ) = Σ_k (−1)^k q^{k(3k−1)/2}, through q^{order}.
pub fn euler_product(order: usize) -> QSeries {
    let mut c = vec![BigInt::zero(); order + 1];
    c[0] = BigInt::one();
    for k in 1.. {
        let g1 = k * (3 * k - 1) / 2;
        if g1 > order {
            break;
        }
        let sign = if k % 2 == 1 { -BigInt::one() } else { BigInt::one() };
        c[g1] += &sign;
        let g2 = k * (3 * k + 1) / 2;
        if g2 <= order {
            c[g2] += &sign;
        }
    }
    QSeries::normalize(Q::zero(), 1, c, qi(order as i64))
}

/// η(q)^{−r} = q^{−r/24}Σ p_r(n)qⁿ through q^{−r/24 + order}.
pub fn eta_inv_pow(r: u32, order: usize) -> QSeries {
    let p = QSeries::normalize(Q::zero(), 1, partition_numbers(order), qi(order as i64));
    let pr = if r == 1 { p } else { p.pow(r).expect("integer grid") };
    pr.qshift(&qr(-(r as i64), 24))
}

/// η(q)^r through q^{r/24 + order}.
pub fn eta_pow(r: u32, order: usize) -> QSeries {
    euler_product(order).pow(r).expect("integer grid").qshift(&qr(r as i64, 24))
}

/// Free-fermion characters as eta quotients, through `order` q-units past
/// their leading exponent.
pub fn fermion_char(kind: FermionKind, order: usize) -> QSeries {
    let n = order + 2;
    let half = qr(1, 2);
    let two = qi(2);
    let (s, lead) = match kind {
        FermionKind::NsCh => {
            let a = eta_pow(2, n);
            let b = eta_inv_pow(1, n).resample(&two).unwrap();
            let c = eta_inv_pow(1, 2 * n).resample(&half).unwrap();
            (a.mul(&b).unwrap().mul(&c).unwrap(), qr(-1, 48))
        }
        FermionKind::NsSch => {
            let a = eta_pow(1, 2 * n).resample(&half).unwrap();
            (a.mul(&eta_inv_pow(1, n)).unwrap(), qr(-1, 48))
        }
        FermionKind::RTwisted => {
            let a = eta_pow(1, n).resample(&two).unwrap();
            (a.mul(&eta_inv_pow(1, n)).unwrap().scale(&BigInt::from(2)), qr(1, 24))
        }
    };
    s.truncate(&(lead + qi(order as i64)))
}

/// Π_{n ≥ from}(1 − qⁿ)^{−1} through q^{order}, by repeated geometric
/// division.
pub fn restricted_partitions(from: usize, order: usize) -> QSeries {
    let mut c = vec![BigInt::zero(); order + 1];
    c[0] = BigInt::one();
    for part in from.max(1)..=order {
        for k in part..=order {
            let t = c[k - part].clone();
            c[k] += t;
        }
    }
    QSeries::normalize(Q::zero(), 1, c, qi(order as i64))
}

/// Π_{k ∈ ℤ+1/2, k ≥ 1/2}(1 + ε q^k) through q^{order}, expanded directly.
pub fn half_integer_product(sign: i64, order: usize) -> QSeries {
    // work on the grid 1/2: exponent k = j/2 with j odd
    let n = 2 * order;
    let mut c = vec![BigInt::zero(); n + 1];
    c[0] = BigInt::one();
    for j in (1..=n).step_by(2) {
        for k in (j..=n).rev() {
            let t = &c[k - j] * sign;
            c[k] += t;
        }
    }
    QSeries::normalize(Q::zero(), 2, c, qi(order as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Counts partitions of n with all parts ≥ `min` by brute recursion.
    fn brute_partitions(n: usize, min: usize) -> u64 {
        fn go(n: usize, max: usize, min: usize) -> u64 {
            if n == 0 {
                return 1;
            }
            (min..=max.min(n)).map(|k| go(n - k, k, min)).sum()
        }
        go(n, n, min)
    }

    #[test]
    fn partitions_match_brute_force() {
        let p = partition_numbers(30);
        for (n, pn) in p.iter().enumerate() {
            assert_eq!(*pn, BigInt::from(brute_partitions(n, 1)));
        }
        assert_eq!(partition_numbers(100)[100], "190569292".parse::<BigInt>().unwrap());
    }

    #[test]
    fn eta_inverse_powers() {
        let e1 = eta_inv_pow(1, 10);
        assert_eq!(e1.base(), &qr(-1, 24));
        assert_eq!(&e1.coeffs()[..5], &ints(&[1, 1, 2, 3, 5])[..]);
        let e2 = eta_inv_pow(2, 10);
        assert_eq!(e2.base(), &qr(-1, 12));
        assert_eq!(&e2.coeffs()[..4], &ints(&[1, 2, 5, 10])[..]);
        assert_eq!(e2, e1.mul(&e1).unwrap());
        let one = eta_pow(1, 200).mul(&eta_inv_pow(1, 200)).unwrap();
        assert_eq!(one, QSeries::one(qi(200)));
        let three = eta_pow(3, 40).mul(&eta_inv_pow(3, 40)).unwrap();
        assert_eq!(three, QSeries::one(qi(40)));
    }

    #[test]
    fn parts_at_least_two() {
        let p = QSeries::normalize(Q::zero(), 1, partition_numbers(6), qi(6));
        let one_minus_q = QSeries::from_terms([(qi(0), BigInt::one()), (qi(1), -BigInt::one())], qi(100)).unwrap();
        let s = one_minus_q.mul(&p).unwrap();
        assert_eq!(s.coeffs(), &ints(&[1, 0, 1, 1, 2, 2, 4])[..]);
        let r = restricted_partitions(2, 20);
        for n in 0..=20 {
            assert_eq!(r.dense_coeffs()[n], BigInt::from(brute_partitions(n, 2)));
        }
    }

    /// Π(1 ± q^{n−1/2}) expanded directly.
    #[test]
    fn fermion_characters() {
        let ch = fermion_char(FermionKind::NsCh, 20);
        let direct = half_integer_product(1, 20).qshift(&qr(-1, 48));
        assert_eq!(ch, direct);
        assert_eq!(ch.grid(), 2);
        // distinct half-odd parts: nothing sums to 1
        assert_eq!(&ch.coeffs()[..6], &ints(&[1, 1, 0, 1, 1, 1])[..]);
        let sch = fermion_char(FermionKind::NsSch, 20);
        assert_eq!(sch, half_integer_product(-1, 20).qshift(&qr(-1, 48)));
        assert_eq!(&sch.coeffs()[..2], &ints(&[1, -1])[..]);
        let r = fermion_char(FermionKind::RTwisted, 20);
        // 2Π(1+qⁿ): coefficients are twice the counts of partitions into distinct parts
        let mut distinct = vec![0i64; 21];
        distinct[0] = 1;
        for part in 1..=20 {
            for k in (part..=20).rev() {
                distinct[k] += distinct[k - part];
            }
        }
        assert_eq!(r.base(), &qr(1, 24));
        assert_eq!(r.dense_coeffs(), ints(&distinct.iter().map(|x| 2 * x).collect::<Vec<_>>()));
    }

    #[test]
    fn fermion_product_identity() {
        // ch F · sch F = q^{−1/24}Π(1 − q^{2n−1}) = η(q)/η(q²)
        let prod = fermion_char(FermionKind::NsCh, 50).mul(&fermion_char(FermionKind::NsSch, 50)).unwrap();
        let quotient = eta_pow(1, 50).mul(&eta_inv_pow(1, 30).resample(&qi(2)).unwrap()).unwrap();
        let p = prod.precision().min(quotient.precision()).clone();
        assert!(p >= qi(49));
        assert_eq!(prod.truncate(&p), quotient.truncate(&p));
        assert_eq!(prod.grid(), 1);
    }

    #[test]
    fn resample_eta() {
        let e = eta_pow(1, 20);
        let e2 = e.resample(&qi(2)).unwrap();
        assert_eq!(e2.base(), &qr(1, 12));
        assert_eq!(e2.coeff(&(qr(1, 12) + qi(2))), Some(BigInt::from(-1)));
        assert_eq!(e2.coeff(&(qr(1, 12) + qi(1))), Some(BigInt::zero()));
        assert_eq!(e2.precision(), &((qr(1, 24) + qi(20)) * qi(2)));
    }

    #[test]
    fn zero_is_identity() {
        let a = eta_inv_pow(1, 10);
        let z = QSeries::zero(qi(100));
        assert_eq!(a.add(&z).unwrap(), a);
        assert_eq!(z.add(&a).unwrap(), a);
        assert!(a.sub(&a).unwrap().is_zero());
        assert_eq!(a.sub(&a).unwrap().precision(), a.precision());
    }

    #[test]
    fn precision_is_never_extended() {
        let a = eta_inv_pow(1, 5);
        let b = eta_inv_pow(1, 10);
        assert_eq!(a.add(&b).unwrap().precision(), a.precision());
        let c = a.mul(&b).unwrap();
        assert_eq!(c.precision(), &(qr(-1, 24) + qi(5) + qr(-1, 24)));
        assert!(QSeries::new(Q::zero(), 1, ints(&[1, 2]), qi(10)).unwrap().precision() == &qi(1));
    }

    #[test]
    fn mixed_bases_and_grids() {
        let a = QSeries::monomial(BigInt::one(), qr(1, 8), qi(10));
        let b = QSeries::monomial(BigInt::from(3), qr(1, 3), qi(10));
        let s = a.add(&b).unwrap();
        assert_eq!(s.base(), &qr(1, 8));
        assert_eq!(s.grid(), 24);
        assert_eq!(s.coeff(&qr(1, 3)), Some(BigInt::from(3)));
        let big = QSeries::monomial(BigInt::one(), qr(1, 10007), qi(1));
        assert!(matches!(big.add(&a), Err(Error::GridBound(..))));
    }

    #[test]
    fn scaling() {
        let a = eta_inv_pow(1, 6);
        assert_eq!(a.scale(&BigInt::from(2)).coeffs()[4], BigInt::from(10));
        assert!(a.scale_rational(&qr(1, 2)).is_err());
        let b = a.scale(&BigInt::from(2)).scale_rational(&qr(1, 2)).unwrap();
        assert_eq!(a, b);
        assert!(a.scale(&BigInt::zero()).is_zero());
    }

    #[test]
    fn display_and_json() {
        let s = QSeries::new(qr(1, 12), 1, ints(&[1, 0, 1, -1, 0]), qr(49, 12)).unwrap();
        assert_eq!(s.to_string(), "q^{1/12}(1 + q^{2} - q^{3}) + O(q^{49/12})");
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(
            j,
            r#"{"base":"1/12","grid":1,"coeffs":["1","0","1","-1","0"],"order":4,"precision":"49/12"}"#
        );
        let back: QSeries = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn kronecker_handles_large_and_signed_values() {
        let a: Vec<BigInt> = (0..300usize).map(|i| BigInt::from(i as i64 - 150) << (i % 70)).collect();
        let b: Vec<BigInt> = (0..280usize).map(|i| -(BigInt::from(i as i64 * 7 + 3) << (i % 90))).collect();
        assert_eq!(kronecker(&a, &b, 600), schoolbook(&a, &b, 600));
        assert_eq!(kronecker(&a, &b, 100), schoolbook(&a, &b, 100));
    }

    fn arb_series() -> impl Strategy<Value = QSeries> {
        (
            prop::sample::select(vec![qi(0), qr(1, 2), qr(-1, 24), qr(1, 3)]),
            prop::sample::select(vec![1u64, 2, 3]),
            prop::collection::vec(-5i64..6, 1..12),
            0i64..4,
        )
            .prop_map(|(b, g, c, extra)| {
                let prec = &b + qr(c.len() as i64 - 1 + extra, g as i64);
                QSeries::normalize(b, g, ints(&c), prec)
            })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_series(), b in arb_series(), c in arb_series()) {
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
            let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            // both sides agree up to the smaller of the two precisions
            let p = lhs.precision().min(rhs.precision()).clone();
            prop_assert_eq!(lhs.truncate(&p), rhs.truncate(&p));
        }

        #[test]
        fn kernels_agree(a in prop::collection::vec(-1000i64..1000, 1..200), b in prop::collection::vec(-1000i64..1000, 1..200), n in 0usize..400) {
            let (a, b) = (ints(&a), ints(&b));
            prop_assert_eq!(kronecker(&a, &b, n), schoolbook(&a, &b, n));
        }

        #[test]
        fn resample_roundtrip(a in arb_series()) {
            let back = a.resample(&qr(3, 2)).unwrap().resample(&qr(2, 3)).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
