//! Exact arithmetic in cyclotomic fields Q(zeta_N).
//!
//! A scalar is a vector of rationals on the canonical basis
//! 1, zeta, ..., zeta^{phi(N)-1} of Q[x]/Phi_N(x), so equality is
//! coefficient-wise at a common conductor. No floating point anywhere.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{HopfError, Result};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator (guaranteed by the backing implementation).
pub type Rat = BigRational;

/// Conductors are capped here; beyond this the operation errors out.
pub const MAX_CONDUCTOR: u64 = 256;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Formats a rational as `p` or `p/q` (exact, decimal-free).
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q`.
pub fn rat_from_string(s: &str) -> Result<Rat> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| HopfError::InvalidInput(format!("bad integer `{t}`")))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(HopfError::DivisionByZero);
            }
            Ok(Rat::new(parse_int(p)?, den))
        }
    }
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = Vec::new();
    for d in 1..=n {
        if n % d == 0 {
            ds.push(d);
        }
    }
    ds
}

/// Per-conductor data: the cyclotomic polynomial and the reductions of
/// x^k modulo it, for every power that arithmetic or lifting can produce.
struct ConductorTable {
    phi: usize,
    /// reduction[k] = coefficients of x^k mod Phi_N on the canonical basis,
    /// for 0 <= k < 2N.
    reduction: Vec<Vec<Rat>>,
}

/// Coefficients (ascending degree) of Phi_n, computed by exact integer
/// polynomial division of x^n - 1 by the product of lower cyclotomics.
fn cyclotomic_polynomial(n: u64, cache: &mut HashMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = cache.get(&n) {
        return p.clone();
    }
    let poly = if n == 1 {
        vec![BigInt::from(-1), BigInt::from(1)]
    } else {
        // x^n - 1
        let mut num = vec![BigInt::zero(); n as usize + 1];
        num[0] = BigInt::from(-1);
        num[n as usize] = BigInt::one();
        // divide by Phi_d for every proper divisor d
        for d in divisors(n) {
            if d == n {
                continue;
            }
            let den = cyclotomic_polynomial(d, cache);
            num = poly_div_exact(&num, &den);
        }
        num
    };
    cache.insert(n, poly.clone());
    poly
}

/// Exact division of integer polynomials (remainder must be zero; the
/// divisor is monic up to sign so the quotient stays integral).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    assert!(lead.clone().abs().is_one(), "divisor must be +-monic");
    let nd = rem.len() - 1;
    if nd < dd {
        assert!(rem.iter().all(|c| c.is_zero()));
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = &rem[k + dd] / &lead;
        quot[k] = c.clone();
        for (i, dc) in den.iter().enumerate() {
            let v = &rem[k + i] - &c * dc;
            rem[k + i] = v;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division was not exact");
    while quot.len() > 1 && quot.last().unwrap().is_zero() {
        quot.pop();
    }
    quot
}

fn conductor_tables() -> &'static Mutex<HashMap<u64, &'static ConductorTable>> {
    static TABLES: OnceLock<Mutex<HashMap<u64, &'static ConductorTable>>> = OnceLock::new();
    TABLES.get_or_init(|| Mutex::new(HashMap::new()))
}

fn table(n: u64) -> Result<&'static ConductorTable> {
    if n == 0 || n > MAX_CONDUCTOR {
        return Err(HopfError::ConductorTooLarge(n));
    }
    let mut guard = conductor_tables().lock().unwrap();
    if let Some(t) = guard.get(&n) {
        return Ok(t);
    }
    let mut cache = HashMap::new();
    let phi_poly = cyclotomic_polynomial(n, &mut cache);
    let phi = phi_poly.len() - 1;
    debug_assert_eq!(phi as u64, euler_phi(n));
    // x^phi = -(Phi_N - x^phi); extend iteratively up to x^{2N-1}.
    let mut reduction: Vec<Vec<Rat>> = Vec::with_capacity(2 * n as usize);
    for k in 0..phi {
        let mut row = vec![Rat::zero(); phi];
        row[k] = Rat::one();
        reduction.push(row);
    }
    let top: Vec<Rat> = (0..phi)
        .map(|i| -Rat::from_integer(phi_poly[i].clone()))
        .collect();
    reduction.push(top);
    for k in phi + 1..2 * n as usize {
        // x^k = x * x^{k-1}: shift then fold the overflow through x^phi.
        let prev = reduction[k - 1].clone();
        let mut row = vec![Rat::zero(); phi];
        for i in 0..phi - 1 {
            row[i + 1] = prev[i].clone();
        }
        let carry = prev[phi - 1].clone();
        if !carry.is_zero() {
            let fold = &reduction[phi];
            for i in 0..phi {
                let v = &row[i] + &carry * &fold[i];
                row[i] = v;
            }
        }
        reduction.push(row);
    }
    let boxed: &'static ConductorTable = Box::leak(Box::new(ConductorTable { phi, reduction }));
    guard.insert(n, boxed);
    Ok(boxed)
}

/// Exact element of a cyclotomic field Q(zeta_N).
#[derive(Clone)]
pub struct CycloScalar {
    conductor: u64,
    coeffs: Vec<Rat>,
}

impl CycloScalar {
    pub fn zero() -> Self {
        CycloScalar {
            conductor: 1,
            coeffs: vec![Rat::zero()],
        }
    }

    pub fn one() -> Self {
        CycloScalar {
            conductor: 1,
            coeffs: vec![Rat::one()],
        }
    }

    pub fn from_rat(r: Rat) -> Self {
        CycloScalar {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat_int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rat(rat(num, den))
    }

    /// Builds a scalar from explicit basis coefficients at a conductor.
    pub fn from_coeffs(conductor: u64, coeffs: Vec<Rat>) -> Result<Self> {
        let t = table(conductor)?;
        if coeffs.len() != t.phi {
            return Err(HopfError::InvalidInput(format!(
                "conductor {conductor} needs {} coefficients, got {}",
                t.phi,
                coeffs.len()
            )));
        }
        Ok(CycloScalar { conductor, coeffs })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// zeta_N^k in canonical reduced form.
    pub fn root_of_unity(n: u64, k: i64) -> Result<Self> {
        let t = table(n)?;
        let kk = k.rem_euclid(n as i64) as usize;
        Ok(CycloScalar {
            conductor: n,
            coeffs: t.reduction[kk].clone(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Returns the rational value if this scalar lies in Q.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.conductor == 1 {
            return Some(self.coeffs[0].clone());
        }
        self.to_conductor(1).ok().map(|x| x.coeffs[0].clone())
    }

    /// Lifts to conductor `m`; `self.conductor` must divide `m`.
    pub fn to_conductor(&self, m: u64) -> Result<Self> {
        if m == self.conductor {
            return Ok(self.clone());
        }
        if m % self.conductor == 0 {
            let t = table(m)?;
            let step = (m / self.conductor) as usize;
            let mut out = vec![Rat::zero(); t.phi];
            for (i, c) in self.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let red = &t.reduction[i * step];
                for j in 0..t.phi {
                    if !red[j].is_zero() {
                        let v = &out[j] + c * &red[j];
                        out[j] = v;
                    }
                }
            }
            return Ok(CycloScalar {
                conductor: m,
                coeffs: out,
            });
        }
        // Descend: m must divide the conductor and the element must lie in
        // the smaller field.
        if self.conductor % m == 0 {
            return self.descend(m).ok_or_else(|| {
                HopfError::InvalidInput(format!("element does not lie in Q(zeta_{m})"))
            });
        }
        Err(HopfError::InvalidInput(format!(
            "cannot move between conductors {} and {m}",
            self.conductor
        )))
    }

    /// Tries to express the element at a divisor conductor `m`.
    fn descend(&self, m: u64) -> Option<Self> {
        let tm = table(m).ok()?;
        let tn = table(self.conductor).ok()?;
        let step = (self.conductor / m) as usize;
        // Columns: lift of zeta_m^j, j < phi(m). Solve L x = coeffs over Q.
        let cols: Vec<&Vec<Rat>> = (0..tm.phi).map(|j| &tn.reduction[j * step]).collect();
        let mut aug: Vec<Vec<Rat>> = (0..tn.phi)
            .map(|r| {
                let mut row: Vec<Rat> = cols.iter().map(|c| c[r].clone()).collect();
                row.push(self.coeffs[r].clone());
                row
            })
            .collect();
        let ncols = tm.phi;
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..ncols {
            let Some(sel) = (prow..aug.len()).find(|&r| !aug[r][col].is_zero()) else {
                continue;
            };
            aug.swap(prow, sel);
            let inv = aug[prow][col].recip();
            for v in aug[prow].iter_mut() {
                *v = &*v * &inv;
            }
            for r in 0..aug.len() {
                if r != prow && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in 0..=ncols {
                        let v = &aug[r][c] - &f * &aug[prow][c];
                        aug[r][c] = v;
                    }
                }
            }
            pivots.push(col);
            prow += 1;
        }
        // Inconsistent if any zero-row has nonzero rhs.
        for r in prow..aug.len() {
            if !aug[r][ncols].is_zero() {
                return None;
            }
        }
        let mut x = vec![Rat::zero(); ncols];
        for (i, &col) in pivots.iter().enumerate() {
            x[col] = aug[i][ncols].clone();
        }
        Some(CycloScalar {
            conductor: m,
            coeffs: x,
        })
    }

    /// Canonical minimal-conductor form (used for serialization).
    pub fn to_minimal_conductor(&self) -> Self {
        for d in divisors(self.conductor) {
            if d == self.conductor {
                break;
            }
            if let Some(x) = self.descend(d) {
                return x;
            }
        }
        self.clone()
    }

    fn unify(a: &Self, b: &Self) -> Result<(Self, Self)> {
        if a.conductor == b.conductor {
            return Ok((a.clone(), b.clone()));
        }
        let m = a.conductor.lcm(&b.conductor);
        if m > MAX_CONDUCTOR {
            return Err(HopfError::ConductorTooLarge(m));
        }
        Ok((a.to_conductor(m)?, b.to_conductor(m)?))
    }

    /// Lifts both operands to the lcm of their conductors.
    pub fn unify_conductor(a: &Self, b: &Self) -> Result<(Self, Self)> {
        Self::unify(a, b)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = Self::unify(self, other).expect("conductor bound exceeded");
        for i in 0..a.coeffs.len() {
            let v = &a.coeffs[i] + &b.coeffs[i];
            a.coeffs[i] = v;
        }
        a
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (mut a, b) = Self::unify(self, other).expect("conductor bound exceeded");
        for i in 0..a.coeffs.len() {
            let v = &a.coeffs[i] - &b.coeffs[i];
            a.coeffs[i] = v;
        }
        a
    }

    pub fn neg(&self) -> Self {
        CycloScalar {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        // Fast path: plain rationals.
        if self.conductor == 1 && other.conductor == 1 {
            return CycloScalar {
                conductor: 1,
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            };
        }
        if self.conductor == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.conductor == 1 {
            return self.scale(&other.coeffs[0]);
        }
        let (a, b) = Self::unify(self, other).expect("conductor bound exceeded");
        let t = table(a.conductor).expect("table");
        let phi = t.phi;
        let mut conv = vec![Rat::zero(); 2 * phi - 1];
        for (i, ca) in a.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let v = &conv[i + j] + ca * cb;
                conv[i + j] = v;
            }
        }
        let mut out = vec![Rat::zero(); phi];
        for (k, c) in conv.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < phi {
                let v = &out[k] + &c;
                out[k] = v;
            } else {
                let red = &t.reduction[k];
                for j in 0..phi {
                    if !red[j].is_zero() {
                        let v = &out[j] + &c * &red[j];
                        out[j] = v;
                    }
                }
            }
        }
        CycloScalar {
            conductor: a.conductor,
            coeffs: out,
        }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            // Keep the conductor: callers prune zeros where sparsity matters.
            return CycloScalar {
                conductor: self.conductor,
                coeffs: vec![Rat::zero(); self.coeffs.len()],
            };
        }
        CycloScalar {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse, by solving the multiplication-by-self linear
    /// system over the rationals.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(HopfError::DivisionByZero);
        }
        if self.conductor == 1 {
            return Ok(CycloScalar {
                conductor: 1,
                coeffs: vec![self.coeffs[0].recip()],
            });
        }
        let t = table(self.conductor)?;
        let phi = t.phi;
        // Column j of M is self * x^j.
        let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(phi);
        let mut cur = self.coeffs.clone();
        cols.push(cur.clone());
        for _ in 1..phi {
            // Multiply by x: shift and fold.
            let mut next = vec![Rat::zero(); phi];
            for i in 0..phi - 1 {
                next[i + 1] = cur[i].clone();
            }
            let carry = cur[phi - 1].clone();
            if !carry.is_zero() {
                let fold = &t.reduction[phi];
                for i in 0..phi {
                    let v = &next[i] + &carry * &fold[i];
                    next[i] = v;
                }
            }
            cols.push(next.clone());
            cur = next;
        }
        // Solve M y = e_0.
        let mut aug: Vec<Vec<Rat>> = (0..phi)
            .map(|r| {
                let mut row: Vec<Rat> = (0..phi).map(|c| cols[c][r].clone()).collect();
                row.push(if r == 0 { Rat::one() } else { Rat::zero() });
                row
            })
            .collect();
        for col in 0..phi {
            let Some(sel) = (col..phi).find(|&r| !aug[r][col].is_zero()) else {
                return Err(HopfError::NotInvertible);
            };
            aug.swap(col, sel);
            let inv = aug[col][col].recip();
            for v in aug[col].iter_mut() {
                *v = &*v * &inv;
            }
            for r in 0..phi {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in col..=phi {
                        let v = &aug[r][c] - &f * &aug[col][c];
                        aug[r][c] = v;
                    }
                }
            }
        }
        let y = (0..phi).map(|r| aug[r][phi].clone()).collect();
        Ok(CycloScalar {
            conductor: self.conductor,
            coeffs: y,
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = CycloScalar::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative order if this is a root of unity (bounded search).
    pub fn root_of_unity_order(&self) -> Option<u64> {
        let mut acc = self.clone();
        for k in 1..=2 * MAX_CONDUCTOR {
            if acc.is_one() {
                return Some(k);
            }
            acc = acc.mul(self);
        }
        None
    }

    /// Writes the element as `q * zeta` with q a positive rational and zeta
    /// a root of unity, if possible. Returns (q, root).
    pub fn as_positive_rational_times_root(&self) -> Option<(Rat, CycloScalar)> {
        if self.is_zero() {
            return None;
        }
        let m = self.conductor.lcm(&2);
        if m > MAX_CONDUCTOR {
            return None;
        }
        for j in 0..m {
            let z = CycloScalar::root_of_unity(m, j as i64).ok()?;
            let q = self.mul(&z.invert().ok()?);
            if let Some(r) = q.as_rational() {
                if r.is_positive() {
                    return Some((r, z));
                }
            }
        }
        None
    }

    /// Exact square root when the element is a positive rational times a
    /// root of unity and the root fits inside the conductor bound. The
    /// rational part uses quadratic Gauss sums: sqrt(d) lies in
    /// Q(zeta_{4d}) for squarefree d.
    pub fn sqrt_constructible(&self) -> Option<CycloScalar> {
        let (q, z) = self.as_positive_rational_times_root()?;
        let sq = sqrt_positive_rational(&q)?;
        // zeta_M^j has square root zeta_{2M}^j.
        let ord = z.root_of_unity_order()?;
        if ord == 1 {
            return Some(sq);
        }
        for j in 0..ord {
            if z == CycloScalar::root_of_unity(ord, j as i64).ok()? {
                let double = 2 * ord;
                if double > MAX_CONDUCTOR {
                    return None;
                }
                let root = CycloScalar::root_of_unity(double, j as i64).ok()?;
                return Some(root.mul(&sq));
            }
        }
        None
    }
}

/// Exact square root of a positive rational inside a cyclotomic field:
/// q = (s/b)^2 * d with d squarefree, and sqrt(d) is assembled from
/// sqrt(2) = zeta_8 + zeta_8^{-1} and quadratic Gauss sums
/// sum_a (a|p) zeta_p^a. Returns None when the needed conductor exceeds
/// the bound or the factorization is out of desk range.
pub fn sqrt_positive_rational(q: &Rat) -> Option<CycloScalar> {
    if let Some(r) = rational_sqrt(q) {
        return Some(CycloScalar::from_rat(r));
    }
    // sqrt(a/b) = sqrt(ab)/b.
    let ab = q.numer() * q.denom();
    let ab_u64: u64 = u64::try_from(&ab).ok()?;
    let mut square_part: u64 = 1;
    let mut squarefree: Vec<u64> = Vec::new();
    let mut m = ab_u64;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            square_part *= p.pow(e / 2);
            if e % 2 == 1 {
                squarefree.push(p);
            }
        }
        p += 1;
    }
    if m > 1 {
        squarefree.push(m);
    }
    let d: u64 = squarefree.iter().product();
    if 4 * d > MAX_CONDUCTOR {
        return None;
    }
    let mut root = CycloScalar::one();
    for &p in &squarefree {
        let factor = if p == 2 {
            CycloScalar::root_of_unity(8, 1)
                .ok()?
                .add(&CycloScalar::root_of_unity(8, -1).ok()?)
        } else {
            // Gauss sum g = sum_a (a|p) zeta_p^a: g = sqrt(p) for
            // p = 1 mod 4 and i sqrt(p) for p = 3 mod 4.
            let mut g = CycloScalar::zero();
            for a in 1..p {
                let legendre = {
                    // Euler criterion by repeated squaring mod p.
                    let mut acc: u64 = 1;
                    let mut base = a % p;
                    let mut e = (p - 1) / 2;
                    while e > 0 {
                        if e & 1 == 1 {
                            acc = acc * base % p;
                        }
                        base = base * base % p;
                        e >>= 1;
                    }
                    acc
                };
                let term = CycloScalar::root_of_unity(p, a as i64).ok()?;
                if legendre == 1 {
                    g = g.add(&term);
                } else {
                    g = g.sub(&term);
                }
            }
            if p % 4 == 3 {
                // Divide by i.
                g = g.mul(&CycloScalar::root_of_unity(4, -1).ok()?);
            }
            g
        };
        root = root.mul(&factor);
    }
    let scale = Rat::new(BigInt::from(square_part), q.denom().clone());
    let candidate = root.scale(&scale);
    // Exact verification guards the Gauss-sum sign conventions.
    let square = candidate.mul(&candidate);
    if square.as_rational().as_ref() == Some(q) {
        Some(candidate)
    } else {
        let negated = candidate.neg();
        if negated.mul(&negated).as_rational().as_ref() == Some(q) {
            Some(negated)
        } else {
            None
        }
    }
}

pub fn rational_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        match Self::unify(self, other) {
            Ok((a, b)) => a.coeffs == b.coeffs,
            Err(_) => false,
        }
    }
}

impl Eq for CycloScalar {}

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = rat_to_string(c);
            if i == 0 {
                parts.push(cs);
            } else if i == 1 {
                parts.push(format!("{cs}*z{}", self.conductor));
            } else {
                parts.push(format!("{cs}*z{}^{i}", self.conductor));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
