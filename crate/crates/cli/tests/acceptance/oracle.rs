//! Independent multiprecision oracle: complex roots of integer polynomials by
//! Aberth iteration in 320-bit fixed point, certified by Weierstrass
//! inclusion disks, plus a fixed-point exp/log pair.

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Fractional bits of every fixed-point number.
pub const PREC: u32 = 320;

/// Absolute error allowed in a fixed-point evaluation of `P`.
const EVAL_SLACK_BITS: i32 = 60;

/// `|z^m - 1|` below this marks `z` as a root of unity.
const UNITY_TOL_LOG2: i32 = -150;

pub fn fx_one() -> BigInt {
    BigInt::one() << PREC
}

pub fn fx_to_f64(x: &BigInt) -> f64 {
    x.to_f64().expect("finite") * 2f64.powi(-(PREC as i32))
}

pub fn fx_from_f64(x: f64) -> BigInt {
    BigInt::from_f64((x * 2f64.powi(60)).round()).expect("finite") << (PREC - 60)
}

pub fn fx_to_rational(x: &BigInt) -> BigRational {
    BigRational::new(x.clone(), fx_one())
}

/// Rounds `r >= 0` up to a fixed-point integer.
fn fx_ceil_f64(r: f64) -> BigInt {
    BigInt::from_f64((r * 2f64.powi(PREC as i32)).ceil()).expect("finite") + 1
}

/// Parses a plain decimal such as `-1.25` into fixed point (truncated).
pub fn fx_from_decimal(s: &str) -> BigInt {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits: BigInt = format!("{int}{frac}").parse().expect("decimal digits");
    let scale = BigInt::from(10u32).pow(frac.len() as u32);
    let v = (digits << PREC) / scale;
    if neg {
        -v
    } else {
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct C64 {
    re: f64,
    im: f64,
}

impl C64 {
    fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }

    fn inv(self) -> Self {
        let d = self.re * self.re + self.im * self.im;
        Self::new(self.re / d, -self.im / d)
    }
}

impl Add for C64 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for C64 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for C64 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
}

/// Complex fixed-point number: `re / 2^PREC + i im / 2^PREC`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cx {
    pub re: BigInt,
    pub im: BigInt,
}

impl Cx {
    fn zero() -> Self {
        Self { re: BigInt::zero(), im: BigInt::zero() }
    }

    fn from_int(c: &BigInt) -> Self {
        Self { re: c << PREC, im: BigInt::zero() }
    }

    fn from_c64(z: C64) -> Self {
        Self { re: fx_from_f64(z.re), im: fx_from_f64(z.im) }
    }

    fn add(&self, o: &Self) -> Self {
        Self { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    fn sub(&self, o: &Self) -> Self {
        Self { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn mul(&self, o: &Self) -> Self {
        Self { re: (&self.re * &o.re - &self.im * &o.im) >> PREC, im: (&self.re * &o.im + &self.im * &o.re) >> PREC }
    }

    fn div(&self, o: &Self) -> Self {
        let den = &o.re * &o.re + &o.im * &o.im;
        Self {
            re: ((&self.re * &o.re + &self.im * &o.im) << PREC) / &den,
            im: ((&self.im * &o.re - &self.re * &o.im) << PREC) / &den,
        }
    }

    /// `|z|^2` scaled by `2^(2 PREC)`.
    fn norm_sq(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs_f64(&self) -> f64 {
        fx_to_f64(&self.re).hypot(fx_to_f64(&self.im))
    }

    pub fn re_f64(&self) -> f64 {
        fx_to_f64(&self.re)
    }

    pub fn im_f64(&self) -> f64 {
        fx_to_f64(&self.im)
    }
}

fn norm_sq_to_f64(n: &BigInt) -> f64 {
    n.to_f64().expect("finite") * 2f64.powi(-2 * PREC as i32)
}

/// Coefficients low to high, trailing zeros removed.
fn trim(c: &[BigInt]) -> Vec<BigInt> {
    let mut v = c.to_vec();
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn eval_fx(c: &[BigInt], z: &Cx) -> Cx {
    c.iter().rev().fold(Cx::zero(), |acc, k| acc.mul(z).add(&Cx::from_int(k)))
}

fn derivative(c: &[BigInt]) -> Vec<BigInt> {
    c.iter().enumerate().skip(1).map(|(i, k)| k * BigInt::from(i)).collect()
}

fn rat_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let lead = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() {
        let q = r.last().unwrap().clone() / &lead;
        let shift = r.len() - b.len();
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &q * bi;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

/// `gcd(P, P')` over the rationals is constant.
pub fn is_squarefree(c: &[BigInt]) -> bool {
    let c = trim(c);
    if c.len() <= 2 {
        return true;
    }
    let to_q = |v: &[BigInt]| v.iter().map(|x| BigRational::from_integer(x.clone())).collect::<Vec<_>>();
    let mut a = to_q(&c);
    let mut b = to_q(&derivative(&c));
    while !b.is_empty() {
        let r = rat_rem(&a, &b);
        a = b;
        b = r;
    }
    a.len() == 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Place {
    Inside,
    Circle,
    Outside,
}

#[derive(Debug, Clone)]
pub struct Root {
    pub z: Cx,
    /// Certified radius: the disk around `z` holds exactly this root.
    pub radius: f64,
    pub place: Place,
    pub root_of_unity: bool,
}

impl Root {
    pub fn re_upper(&self) -> BigRational {
        fx_to_rational(&(&self.z.re + fx_ceil_f64(self.radius)))
    }

    pub fn re_lower(&self) -> BigRational {
        fx_to_rational(&(&self.z.re - fx_ceil_f64(self.radius)))
    }

    pub fn is_real(&self) -> bool {
        self.z.im_f64().abs() <= self.radius
    }
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub squarefree: bool,
    pub zero_root: bool,
    pub roots: Vec<Root>,
}

impl Classification {
    pub fn count(&self, place: Place) -> usize {
        self.roots.iter().filter(|r| r.place == place).count()
    }

    /// One root outside the circle, real and above 1; at least one on the
    /// circle; no root of unity, no root at 0, no repeated root. For a monic
    /// integer polynomial this is exactly the minimal polynomial of a Salem
    /// number.
    pub fn is_salem(&self) -> bool {
        self.squarefree
            && !self.zero_root
            && self.count(Place::Outside) == 1
            && self.count(Place::Circle) >= 1
            && !self.roots.iter().any(|r| r.root_of_unity)
            && self.salem_root().is_some_and(|r| r.is_real() && r.z.re_f64() > 1.0)
    }

    pub fn salem_root(&self) -> Option<&Root> {
        self.roots.iter().find(|r| r.place == Place::Outside)
    }
}

fn aberth_f64(c: &[f64]) -> Vec<C64> {
    let n = c.len() - 1;
    let lead = c[n];
    let radius = 1.0 + c[..n].iter().map(|x| (x / lead).abs()).fold(0.0, f64::max);
    let mut z: Vec<C64> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            C64::new(0.7 * radius * t.cos(), 0.7 * radius * t.sin())
        })
        .collect();
    let eval = |z: C64| -> (C64, C64) {
        let mut p = C64::new(0.0, 0.0);
        let mut dp = C64::new(0.0, 0.0);
        for &k in c.iter().rev() {
            dp = dp * z + p;
            p = p * z + C64::new(k, 0.0);
        }
        (p, dp)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.abs() == 0.0 {
                continue;
            }
            let ratio = p * dp.inv();
            let mut s = C64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    s = s + (z[i] - z[j]).inv();
                }
            }
            let w = ratio * (C64::new(1.0, 0.0) - ratio * s).inv();
            if w.re.is_finite() && w.im.is_finite() {
                z[i] = z[i] - w;
                moved = moved.max(w.abs() / (1.0 + z[i].abs()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn aberth_fx(c: &[BigInt], z: &mut [Cx]) {
    let dc = derivative(c);
    let n = z.len();
    let tol = BigInt::one() << (2 * EVAL_SLACK_BITS as u32);
    for _ in 0..60 {
        let mut done = true;
        for i in 0..n {
            let p = eval_fx(c, &z[i]);
            if p.re.is_zero() && p.im.is_zero() {
                continue;
            }
            let ratio = p.div(&eval_fx(&dc, &z[i]));
            let mut s = Cx::zero();
            for j in 0..n {
                if j != i {
                    s = s.add(&Cx::from_int(&BigInt::one()).div(&z[i].sub(&z[j])));
                }
            }
            let w = ratio.div(&Cx::from_int(&BigInt::one()).sub(&ratio.mul(&s)));
            if w.norm_sq() > tol {
                done = false;
            }
            z[i] = z[i].sub(&w);
        }
        if done {
            break;
        }
    }
}

/// Smallest `m <= 60` with `|z^m - 1|` negligible.
fn unity_order(z: &Cx) -> Option<usize> {
    let one = Cx::from_int(&BigInt::one());
    let mut w = z.clone();
    let tol = 2f64.powi(2 * UNITY_TOL_LOG2);
    for m in 1..=60 {
        if norm_sq_to_f64(&w.sub(&one).norm_sq()) < tol {
            return Some(m);
        }
        w = w.mul(z);
    }
    None
}

/// Classifies every complex root of `c` (low to high, nonzero leading
/// coefficient) relative to the unit circle.
pub fn classify(c: &[BigInt]) -> Result<Classification, String> {
    let c = trim(c);
    if c.is_empty() {
        return Err("zero polynomial".into());
    }
    let squarefree = is_squarefree(&c);
    let zero_root = c[0].is_zero();
    let n = c.len() - 1;
    if !squarefree || n == 0 {
        return Ok(Classification { squarefree, zero_root, roots: Vec::new() });
    }
    let cf: Vec<f64> = c.iter().map(|k| k.to_f64().expect("small coefficient")).collect();
    let mut z: Vec<Cx> = aberth_f64(&cf).into_iter().map(Cx::from_c64).collect();
    aberth_fx(&c, &mut z);

    let lead = c[n].abs().to_f64().expect("small coefficient");
    let slack = 2f64.powi(EVAL_SLACK_BITS - PREC as i32);
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let mut prod = 1.0f64;
        for j in 0..n {
            if j != i {
                prod *= z[i].sub(&z[j]).abs_f64();
            }
        }
        if prod == 0.0 {
            return Err(format!("coincident approximations for {c:?}"));
        }
        let p = norm_sq_to_f64(&eval_fx(&c, &z[i]).norm_sq()).sqrt();
        radii.push(1.01 * n as f64 * (p + slack) / (lead * prod));
    }
    for i in 0..n {
        for j in i + 1..n {
            if z[i].sub(&z[j]).abs_f64() <= radii[i] + radii[j] {
                return Err(format!("inclusion disks overlap for {c:?}"));
            }
        }
    }
    let one_sq = BigInt::one() << (2 * PREC);
    let roots = z
        .into_iter()
        .zip(radii)
        .map(|(z, radius)| {
            let gap = norm_sq_to_f64(&(z.norm_sq() - &one_sq)) / (1.0 + z.abs_f64());
            let place = if gap > radius {
                Place::Outside
            } else if gap < -radius {
                Place::Inside
            } else {
                Place::Circle
            };
            let root_of_unity = place == Place::Circle && unity_order(&z).is_some();
            Root { z, radius, place, root_of_unity }
        })
        .collect();
    Ok(Classification { squarefree, zero_root, roots })
}

pub fn classify_i64(c: &[i64]) -> Result<Classification, String> {
    classify(&c.iter().map(|&k| BigInt::from(k)).collect::<Vec<_>>())
}

/// `P(x) = x^n Q(x + 1/x)` expanded with binomial coefficients.
pub fn inverse_trace(q: &[i64]) -> Vec<BigInt> {
    let n = q.len() - 1;
    let mut p = vec![BigInt::zero(); 2 * n + 1];
    for (k, qk) in q.iter().enumerate() {
        let mut binom = BigInt::one();
        for j in 0..=k {
            p[n + 2 * j - k] += &binom * qk;
            binom = binom * (k - j) / (j + 1);
        }
    }
    p
}

/// `exp(y)` in fixed point by argument halving and Taylor series.
pub fn exp_fx(y: &BigInt) -> BigInt {
    const HALVINGS: u32 = 24;
    let t = y >> HALVINGS;
    let mut sum = fx_one();
    let mut term = fx_one();
    let mut i = 1u32;
    while !term.is_zero() {
        term = ((term * &t) >> PREC) / i;
        sum += &term;
        i += 1;
    }
    for _ in 0..HALVINGS {
        sum = (&sum * &sum) >> PREC;
    }
    sum
}

/// `ln(x)` for `x > 0` by Newton's method on `exp(y) = x`.
pub fn ln_fx(x: &BigInt) -> BigInt {
    let mut y = fx_from_f64(fx_to_f64(x).ln());
    for _ in 0..8 {
        let e = exp_fx(&y);
        y = y + (x << PREC) / e - fx_one();
    }
    y
}
