//! Root data, weights and Weyl groups for the finite simple Lie algebras.
//!
//! Every vector is stored in simple-root coordinates. The invariant form is
//! normalized so that long roots have squared length 2. The single exception
//! is `B1`, whose only root is treated as the short root of the `B` series
//! and has squared length 1.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{is_int, mat_det, mat_inverse, qi, qr, Q};

/// Default bound on the number of Weyl group elements we are willing to list.
pub const DEFAULT_WEYL_CAP: usize = 1_000_000;
/// Default bound on the number of reduced words returned for one element.
pub const DEFAULT_WORD_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleLieType {
    pub series: Series,
    pub rank: usize,
}

impl SimpleLieType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A | Series::B => rank >= 1,
            Series::C => rank >= 2,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(SimpleLieType { series, rank })
        } else {
            Err(Error::InvalidType(format!("{series:?}{rank}")))
        }
    }

    /// Parses strings such as `B2` or `e6`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidType(s.to_string());
        let mut chars = s.chars();
        let series = match chars.next().ok_or_else(bad)?.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        Self::new(series, rank).map_err(|_| bad())
    }

    /// Closed-form order of the Weyl group.
    pub fn weyl_order(&self) -> u128 {
        let r = self.rank as u128;
        let fact = |n: u128| (1..=n).product::<u128>();
        match self.series {
            Series::A => fact(r + 1),
            Series::B | Series::C => (1u128 << r) * fact(r),
            Series::D => (1u128 << (r - 1)) * fact(r),
            Series::E => match r {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Series::F => 1152,
            Series::G => 12,
        }
    }

    /// Exponents of the Lie algebra, increasing.
    pub fn exponents(&self) -> Vec<i64> {
        let r = self.rank as i64;
        let mut e: Vec<i64> = match self.series {
            Series::A => (1..=r).collect(),
            Series::B | Series::C => (1..=r).map(|k| 2 * k - 1).collect(),
            Series::D => (1..r).map(|k| 2 * k - 1).chain([r - 1]).collect(),
            Series::E => match r {
                6 => vec![1, 4, 5, 7, 8, 11],
                7 => vec![1, 5, 7, 9, 11, 13, 17],
                _ => vec![1, 7, 11, 13, 17, 19, 23, 29],
            },
            Series::F => vec![1, 5, 7, 11],
            Series::G => vec![1, 5],
        };
        e.sort();
        e
    }

    /// Gram matrix of the simple roots.
    fn gram(&self) -> Vec<Vec<Q>> {
        let r = self.rank;
        let mut g = vec![vec![Q::zero(); r]; r];
        let mut link = |i: usize, j: usize, v: Q| {
            g[i][j] = v.clone();
            g[j][i] = v;
        };
        match self.series {
            Series::A => {
                for i in 0..r - 1 {
                    link(i, i + 1, qi(-1));
                }
            }
            Series::B => {
                for i in 0..r.saturating_sub(1) {
                    link(i, i + 1, qi(-1));
                }
            }
            Series::C => {
                for i in 0..r - 2 {
                    link(i, i + 1, qr(-1, 2));
                }
                link(r - 2, r - 1, qi(-1));
            }
            Series::D => {
                for i in 0..r - 2 {
                    link(i, i + 1, qi(-1));
                }
                link(r - 3, r - 1, qi(-1));
            }
            Series::E => {
                // chain 1-2-3-5-6-7-8, node 4 hangs off node 3
                let chain: Vec<usize> = [0, 1, 2, 4, 5, 6, 7].into_iter().filter(|&k| k < r).collect();
                for w in chain.windows(2) {
                    link(w[0], w[1], qi(-1));
                }
                link(2, 3, qi(-1));
            }
            Series::F => {
                link(0, 1, qi(-1));
                link(1, 2, qi(-1));
                link(2, 3, qr(-1, 2));
            }
            Series::G => link(0, 1, qi(-1)),
        }
        for i in 0..r {
            g[i][i] = match (self.series, i) {
                (Series::B, i) if i == r - 1 => qi(1),
                (Series::C, i) if i < r - 1 => qi(1),
                (Series::F, 2 | 3) => qi(1),
                (Series::G, 1) => qr(2, 3),
                _ => qi(2),
            };
        }
        g
    }
}

impl fmt::Display for SimpleLieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.series, self.rank)
    }
}

/// A vector of 𝔥* in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVec {
    pub coords: Vec<Q>,
}

impl WeightVec {
    pub fn new(coords: Vec<Q>) -> Self {
        WeightVec { coords }
    }
    pub fn zero(rank: usize) -> Self {
        WeightVec { coords: vec![Q::zero(); rank] }
    }
    pub fn from_ints(c: &[i64]) -> Self {
        WeightVec { coords: c.iter().map(|&x| qi(x)).collect() }
    }
    pub fn unit(rank: usize, i: usize) -> Self {
        let mut w = Self::zero(rank);
        w.coords[i] = Q::one();
        w
    }
    pub fn rank(&self) -> usize {
        self.coords.len()
    }
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
    pub fn scale(&self, s: &Q) -> Self {
        WeightVec { coords: self.coords.iter().map(|c| c * s).collect() }
    }
    pub fn scale_int(&self, s: i64) -> Self {
        self.scale(&qi(s))
    }
    /// True when the vector lies in the root lattice Q.
    pub fn in_root_lattice(&self) -> bool {
        self.coords.iter().all(is_int)
    }
    /// Sum of the coordinates; the height for elements of Q.
    pub fn height(&self) -> Q {
        self.coords.iter().sum()
    }
    /// Integer coordinates, when all coordinates are integral and small.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.coords
            .iter()
            .map(|c| if is_int(c) { c.numer().to_i64() } else { None })
            .collect()
    }
}

impl fmt::Display for WeightVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl Serialize for WeightVec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.coords.len()))?;
        for c in &self.coords {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

impl<'a> Add<&'a WeightVec> for &'a WeightVec {
    type Output = WeightVec;
    fn add(self, o: &WeightVec) -> WeightVec {
        debug_assert_eq!(self.rank(), o.rank());
        WeightVec { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a WeightVec> for &'a WeightVec {
    type Output = WeightVec;
    fn sub(self, o: &WeightVec) -> WeightVec {
        debug_assert_eq!(self.rank(), o.rank());
        WeightVec { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Add for WeightVec {
    type Output = WeightVec;
    fn add(self, o: WeightVec) -> WeightVec {
        &self + &o
    }
}

impl Sub for WeightVec {
    type Output = WeightVec;
    fn sub(self, o: WeightVec) -> WeightVec {
        &self - &o
    }
}

impl Neg for &WeightVec {
    type Output = WeightVec;
    fn neg(self) -> WeightVec {
        WeightVec { coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl Neg for WeightVec {
    type Output = WeightVec;
    fn neg(self) -> WeightVec {
        -&self
    }
}

pub type IntMat = Vec<Vec<i64>>;

/// Everything downstream needs to know about one root system.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub lie_type: SimpleLieType,
    pub gram: Vec<Vec<Q>>,
    pub cartan: IntMat,
    pub simple_roots: Vec<WeightVec>,
    pub simple_coroots: Vec<WeightVec>,
    pub fund_weights: Vec<WeightVec>,
    pub fund_coweights: Vec<WeightVec>,
    pub rho: WeightVec,
    pub rho_check: WeightVec,
    pub theta: WeightVec,
    pub theta_s: WeightVec,
    /// Highest root of the Langlands dual, realized as the coroot of θ_s.
    pub theta_l: WeightVec,
    pub lacing: i64,
    pub coxeter: i64,
    pub dual_coxeter: i64,
    pub dual_coxeter_l: i64,
    pub exponents: Vec<i64>,
    pub positive_roots: Vec<WeightVec>,
    /// Minuscule weights, starting with 0.
    pub minuscule: Vec<WeightVec>,
    /// For each minuscule weight after 0, the index of the fundamental weight.
    pub minuscule_nodes: Vec<usize>,
    norms: Vec<Q>,
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.lie_type.rank
    }

    fn check_rank(&self, v: &WeightVec) -> Result<()> {
        if v.rank() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), got: v.rank() });
        }
        Ok(())
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.rank() {
            return Err(Error::IndexOutOfRange { index: i, rank: self.rank() });
        }
        Ok(())
    }

    /// (μ, ν) without rank checks.
    pub fn pair(&self, a: &WeightVec, b: &WeightVec) -> Q {
        let mut s = Q::zero();
        for (i, ai) in a.coords.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            let mut row = Q::zero();
            for (j, bj) in b.coords.iter().enumerate() {
                if !bj.is_zero() && !self.gram[i][j].is_zero() {
                    row += &self.gram[i][j] * bj;
                }
            }
            s += ai * row;
        }
        s
    }

    pub fn pairing(&self, a: &WeightVec, b: &WeightVec) -> Result<Q> {
        self.check_rank(a)?;
        self.check_rank(b)?;
        Ok(self.pair(a, b))
    }

    /// (μ, α_i∨) without checks.
    pub fn copair(&self, a: &WeightVec, i: usize) -> Q {
        let mut s = Q::zero();
        for (j, c) in a.coords.iter().enumerate() {
            let cij = self.cartan[i][j];
            if cij != 0 && !c.is_zero() {
                s += c * qi(cij);
            }
        }
        s
    }

    pub fn copairing(&self, a: &WeightVec, i: usize) -> Result<Q> {
        self.check_rank(a)?;
        self.check_index(i)?;
        Ok(self.copair(a, i))
    }

    pub fn norm2(&self, a: &WeightVec) -> Q {
        self.pair(a, a)
    }

    /// |α_i|².
    pub fn simple_norm(&self, i: usize) -> &Q {
        &self.norms[i]
    }

    pub fn is_long(&self, i: usize) -> bool {
        self.norms[i] == qi(2)
    }

    /// The ratio 2/|α_i|²: 1 on long roots, r∨ on short ones.
    pub fn coroot_ratio(&self, i: usize) -> Q {
        qi(2) / &self.norms[i]
    }

    /// Coroot 2α/|α|² of a root.
    pub fn coroot(&self, a: &WeightVec) -> WeightVec {
        a.scale(&(qi(2) / self.norm2(a)))
    }

    pub fn reflect(&self, i: usize, a: &WeightVec) -> Result<WeightVec> {
        self.check_rank(a)?;
        self.check_index(i)?;
        Ok(self.reflect_unchecked(i, a))
    }

    pub fn reflect_unchecked(&self, i: usize, a: &WeightVec) -> WeightVec {
        let c = self.copair(a, i);
        let mut out = a.clone();
        out.coords[i] -= c;
        out
    }

    /// Coordinates (μ, α_i∨).
    pub fn dynkin_labels(&self, a: &WeightVec) -> Vec<Q> {
        (0..self.rank()).map(|i| self.copair(a, i)).collect()
    }

    pub fn from_dynkin(&self, labels: &[Q]) -> Result<WeightVec> {
        if labels.len() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), got: labels.len() });
        }
        let mut out = WeightVec::zero(self.rank());
        for (l, w) in labels.iter().zip(&self.fund_weights) {
            out = &out + &w.scale(l);
        }
        Ok(out)
    }

    /// True when μ ∈ P.
    pub fn is_integral(&self, a: &WeightVec) -> bool {
        self.dynkin_labels(a).iter().all(is_int)
    }

    pub fn is_dominant(&self, a: &WeightVec) -> bool {
        self.dynkin_labels(a).iter().all(|c| !c.is_negative())
    }

    /// Index of the minuscule weight congruent to μ modulo Q, if μ ∈ P.
    pub fn minuscule_class(&self, a: &WeightVec) -> Option<usize> {
        self.minuscule.iter().position(|w| (a - w).in_root_lattice())
    }

    /// dim L_β by the Weyl dimension formula.
    pub fn weyl_dim(&self, beta: &WeightVec) -> Result<BigInt> {
        self.check_rank(beta)?;
        if !self.is_integral(beta) || !self.is_dominant(beta) {
            return Err(Error::NotDominant(beta.to_string()));
        }
        let shifted = beta + &self.rho;
        let mut num = Q::one();
        let mut den = Q::one();
        for a in &self.positive_roots {
            let co = self.coroot(a);
            num *= self.pair(&shifted, &co);
            den *= self.pair(&self.rho, &co);
        }
        let d = num / den;
        debug_assert!(is_int(&d));
        Ok(d.to_integer())
    }
}

/// Builds the root system of a simple type.
pub fn build_root_system(t: SimpleLieType) -> Result<RootSystem> {
    let t = SimpleLieType::new(t.series, t.rank)?;
    let r = t.rank;
    let gram = t.gram();
    let norms: Vec<Q> = (0..r).map(|i| gram[i][i].clone()).collect();
    let cartan: IntMat = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let c = qi(2) * &gram[i][j] / &norms[i];
                    c.to_integer().to_i64().expect("cartan entry")
                })
                .collect()
        })
        .collect();
    let simple_roots: Vec<WeightVec> = (0..r).map(|i| WeightVec::unit(r, i)).collect();
    let simple_coroots: Vec<WeightVec> =
        (0..r).map(|i| simple_roots[i].scale(&(qi(2) / &norms[i]))).collect();

    let cartan_q: Vec<Vec<Q>> = cartan.iter().map(|row| row.iter().map(|&c| qi(c)).collect()).collect();
    let cinv = mat_inverse(&cartan_q).expect("Cartan matrix is invertible");
    let ginv = mat_inverse(&gram).expect("Gram matrix is invertible");
    let column = |m: &Vec<Vec<Q>>, j: usize| WeightVec::new((0..r).map(|i| m[i][j].clone()).collect());
    let fund_weights: Vec<WeightVec> = (0..r).map(|j| column(&cinv, j)).collect();
    let fund_coweights: Vec<WeightVec> = (0..r).map(|j| column(&ginv, j)).collect();
    let sum = |v: &[WeightVec]| v.iter().fold(WeightVec::zero(r), |acc, x| &acc + x);
    let rho = sum(&fund_weights);
    let rho_check = sum(&fund_coweights);

    let positive_int = positive_roots_int(&cartan);
    let positive_roots: Vec<WeightVec> = positive_int.iter().map(|c| WeightVec::from_ints(c)).collect();

    let norm2 = |v: &WeightVec| -> Q {
        let mut s = Q::zero();
        for i in 0..r {
            for j in 0..r {
                s += &v.coords[i] * &gram[i][j] * &v.coords[j];
            }
        }
        s
    };
    let max_norm = positive_roots.iter().map(&norm2).max().unwrap();
    let theta = positive_roots.last().unwrap().clone();
    let theta_s = positive_roots
        .iter()
        .rfind(|a| norm2(a) < max_norm)
        .cloned()
        .unwrap_or_else(|| theta.clone());
    let theta_l = theta_s.scale(&(qi(2) / norm2(&theta_s)));

    let min_norm = norms.iter().min().unwrap();
    let lacing = if t.series == Series::B && r == 1 {
        2
    } else {
        (&max_norm / min_norm).to_integer().to_i64().unwrap()
    };
    let coxeter = (2 * positive_roots.len() / r) as i64;
    let pair = |a: &WeightVec, b: &WeightVec| -> Q {
        let mut s = Q::zero();
        for i in 0..r {
            for j in 0..r {
                s += &a.coords[i] * &gram[i][j] * &b.coords[j];
            }
        }
        s
    };
    let theta_co = theta.scale(&(qi(2) / norm2(&theta)));
    let dual_coxeter = 1 + pair(&rho, &theta_co).to_integer().to_i64().unwrap();
    let dual_coxeter_l = 1 + pair(&rho_check, &theta_s).to_integer().to_i64().unwrap();

    // ϖ_i is minuscule when α_i∨ occurs in ᴸθ with coefficient one.
    let mut minuscule = vec![WeightVec::zero(r)];
    let mut minuscule_nodes = Vec::new();
    for i in 0..r {
        let coeff = &theta_l.coords[i] * &norms[i] / qi(2);
        if coeff.is_one() {
            minuscule.push(fund_weights[i].clone());
            minuscule_nodes.push(i);
        }
    }

    Ok(RootSystem {
        lie_type: t,
        gram,
        cartan,
        simple_roots,
        simple_coroots,
        fund_weights,
        fund_coweights,
        rho,
        rho_check,
        theta,
        theta_s,
        theta_l,
        lacing,
        coxeter,
        dual_coxeter,
        dual_coxeter_l,
        exponents: t.exponents(),
        positive_roots,
        minuscule,
        minuscule_nodes,
        norms,
    })
}

/// Positive roots in integer root coordinates, sorted by (height, coords).
fn positive_roots_int(cartan: &IntMat) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let mut seen: std::collections::HashSet<Vec<i64>> = std::collections::HashSet::new();
    let mut stack: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        })
        .collect();
    while let Some(v) = stack.pop() {
        if !seen.insert(v.clone()) {
            continue;
        }
        for i in 0..r {
            let c: i64 = (0..r).map(|j| cartan[i][j] * v[j]).sum();
            let mut w = v.clone();
            w[i] -= c;
            if !seen.contains(&w) {
                stack.push(w);
            }
        }
    }
    let mut pos: Vec<Vec<i64>> = seen.into_iter().filter(|v| v.iter().all(|&x| x >= 0)).collect();
    pos.sort_by(|a, b| (a.iter().sum::<i64>(), a).cmp(&(b.iter().sum::<i64>(), b)));
    pos
}

/// An element of W with its lexicographically least reduced word.
///
/// `word = [j1, …, jk]` stands for σ_{j1}⋯σ_{jk} (indices from 0), and
/// `action` is its integer matrix on simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub word: Vec<usize>,
    pub action: IntMat,
    pub length: usize,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement { word: vec![], action: identity_mat(rank), length: 0 }
    }

    pub fn apply(&self, a: &WeightVec) -> WeightVec {
        mat_apply(&self.action, a)
    }

    /// (−1)^{l(σ)}.
    pub fn sign(&self) -> i64 {
        if self.length.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// Word with 1-based labels, as printed for users.
    pub fn word_1based(&self) -> Vec<usize> {
        self.word.iter().map(|i| i + 1).collect()
    }
}

impl Serialize for WeylElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.word_1based().serialize(s)
    }
}

pub fn identity_mat(n: usize) -> IntMat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn mat_mul(a: &IntMat, b: &IntMat) -> IntMat {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

pub fn mat_apply(m: &IntMat, a: &WeightVec) -> WeightVec {
    let n = m.len();
    WeightVec::new(
        (0..n)
            .map(|i| {
                let mut s = Q::zero();
                for (j, c) in a.coords.iter().enumerate() {
                    if m[i][j] != 0 && !c.is_zero() {
                        s += c * qi(m[i][j]);
                    }
                }
                s
            })
            .collect(),
    )
}

/// Matrix of σ_i: e_j ↦ e_j − C_ij e_i.
pub fn simple_reflection_mat(cartan: &IntMat, i: usize) -> IntMat {
    let mut m = identity_mat(cartan.len());
    for j in 0..cartan.len() {
        m[i][j] -= cartan[i][j];
    }
    m
}

/// The full Weyl group, listed by (length, word).
#[derive(Clone, Debug)]
pub struct WeylGroup {
    elements: Vec<WeylElement>,
    index: HashMap<Vec<i64>, usize>,
    probe: Vec<i64>,
    simple: Vec<IntMat>,
    longest: usize,
}

impl WeylGroup {
    pub fn enumerate(rs: &RootSystem, cap: usize) -> Result<Self> {
        let order = rs.lie_type.weyl_order();
        if order > cap as u128 {
            return Err(Error::WeylCap { ty: rs.lie_type.to_string(), order, cap });
        }
        let r = rs.rank();
        // ρ scaled to an integral vector; its stabilizer is trivial.
        let den = rs.rho.coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let probe: Vec<i64> = rs
            .rho
            .coords
            .iter()
            .map(|c| (c * Q::from_integer(den.clone())).to_integer().to_i64().unwrap())
            .collect();
        let simple: Vec<IntMat> = (0..r).map(|i| simple_reflection_mat(&rs.cartan, i)).collect();
        let key = |m: &IntMat| -> Vec<i64> { (0..r).map(|i| (0..r).map(|j| m[i][j] * probe[j]).sum()).collect() };

        let mut elements = vec![WeylElement::identity(r)];
        let mut index = HashMap::new();
        index.insert(key(&elements[0].action), 0usize);
        let mut layer = vec![0usize];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for &w in &layer {
                for (i, s) in simple.iter().enumerate() {
                    let m = mat_mul(&elements[w].action, s);
                    let k = key(&m);
                    if index.contains_key(&k) {
                        continue;
                    }
                    let mut word = elements[w].word.clone();
                    word.push(i);
                    let len = word.len();
                    index.insert(k, elements.len());
                    next.push(elements.len());
                    elements.push(WeylElement { word, action: m, length: len });
                }
            }
            layer = next;
        }
        if elements.len() as u128 != order {
            return Err(Error::Inconsistent(format!(
                "enumerated {} Weyl elements, expected {order}",
                elements.len()
            )));
        }
        let longest = elements.len() - 1;
        Ok(WeylGroup { elements, index, probe, simple, longest })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn get(&self, idx: usize) -> &WeylElement {
        &self.elements[idx]
    }

    pub fn longest(&self) -> &WeylElement {
        &self.elements[self.longest]
    }

    pub fn simple_mat(&self, i: usize) -> &IntMat {
        &self.simple[i]
    }

    fn key(&self, m: &IntMat) -> Vec<i64> {
        let r = m.len();
        (0..r).map(|i| (0..r).map(|j| m[i][j] * self.probe[j]).sum()).collect()
    }

    /// Index of the element with the given matrix.
    pub fn index_of(&self, m: &IntMat) -> Option<usize> {
        self.index.get(&self.key(m)).copied()
    }

    /// Index of σ_i σ.
    pub fn left_mul(&self, i: usize, idx: usize) -> usize {
        self.index_of(&mat_mul(&self.simple[i], &self.elements[idx].action)).unwrap()
    }

    /// Index of ab.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index_of(&mat_mul(&self.elements[a].action, &self.elements[b].action)).unwrap()
    }

    pub fn inverse(&self, a: usize) -> usize {
        let mut m = identity_mat(self.simple.len());
        for &i in self.elements[a].word.iter().rev() {
            m = mat_mul(&m, &self.simple[i]);
        }
        self.index_of(&m).unwrap()
    }

    /// Element for a word; errors when the word is not reduced.
    pub fn from_word(&self, word: &[usize]) -> Result<&WeylElement> {
        let r = self.simple.len();
        let mut m = identity_mat(r);
        for &i in word {
            if i >= r {
                return Err(Error::IndexOutOfRange { index: i, rank: r });
            }
            m = mat_mul(&m, &self.simple[i]);
        }
        let e = &self.elements[self.index_of(&m).unwrap()];
        if e.length != word.len() {
            return Err(Error::NotReducedWord(word.to_vec()));
        }
        Ok(e)
    }

    /// Every reduced word of an element, sorted, up to `cap` words.
    pub fn reduced_words(&self, w: &WeylElement, cap: usize) -> Result<Vec<Vec<usize>>> {
        let mut memo: HashMap<Vec<i64>, std::rc::Rc<Vec<Vec<usize>>>> = HashMap::new();
        let mut out = (*self.words_rec(&w.action, cap, &mut memo)?).clone();
        out.sort();
        Ok(out)
    }

    fn words_rec(
        &self,
        m: &IntMat,
        cap: usize,
        memo: &mut HashMap<Vec<i64>, std::rc::Rc<Vec<Vec<usize>>>>,
    ) -> Result<std::rc::Rc<Vec<Vec<usize>>>> {
        let k = self.key(m);
        if let Some(v) = memo.get(&k) {
            return Ok(v.clone());
        }
        let r = m.len();
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut descent = false;
        for i in 0..r {
            // σ α_i < 0 exactly when column i has a negative entry.
            if (0..r).any(|a| m[a][i] < 0) {
                descent = true;
                let sub = self.words_rec(&mat_mul(m, &self.simple[i]), cap, memo)?;
                for w in sub.iter() {
                    let mut w = w.clone();
                    w.push(i);
                    out.push(w);
                    if out.len() > cap {
                        return Err(Error::WordCap(cap));
                    }
                }
            }
        }
        if !descent {
            out.push(vec![]);
        }
        let rc = std::rc::Rc::new(out);
        memo.insert(k, rc.clone());
        Ok(rc)
    }
}

/// All elements of W with reduced words, sorted by (length, word).
pub fn enumerate_weyl(rs: &RootSystem, cap: usize) -> Result<Vec<WeylElement>> {
    Ok(WeylGroup::enumerate(rs, cap)?.elements)
}

pub fn longest_element(rs: &RootSystem) -> Result<WeylElement> {
    Ok(WeylGroup::enumerate(rs, DEFAULT_WEYL_CAP)?.longest().clone())
}

pub fn all_reduced_words(rs: &RootSystem, w: &WeylElement, cap: usize) -> Result<Vec<Vec<usize>>> {
    WeylGroup::enumerate(rs, DEFAULT_WEYL_CAP)?.reduced_words(w, cap)
}

/// |P/Q| as det of the Cartan matrix.
pub fn cartan_det(rs: &RootSystem) -> BigInt {
    let c: Vec<Vec<Q>> = rs.cartan.iter().map(|row| row.iter().map(|&x| qi(x)).collect()).collect();
    mat_det(&c).to_integer()
}

pub fn gram_det(rs: &RootSystem) -> Q {
    mat_det(&rs.gram)
}
