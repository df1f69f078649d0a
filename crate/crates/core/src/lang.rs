//! Truncated Lang equation `w - M sigma(w) = v` over `F_{p^k}[t]/t^N`.
//!
//! Field elements are encoded as integers `a_0 + a_1 p + ... + a_{k-1} p^{k-1}`
//! where `a_i` are the coordinates in the basis `1, X, ..., X^{k-1}` of
//! `F_p[X]/(f)` and `f` is the first monic irreducible of degree `k` in that
//! same encoding order. Frobenius `sigma` raises every coefficient to the
//! `q`-th power and fixes `t`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 24;

/// `F_{p^k}`.
#[derive(Clone, PartialEq, Eq)]
pub struct Field {
    p: u64,
    k: u32,
    order: u64,
    /// Monic modulus, low degree first, length `k + 1`.
    modulus: Vec<u64>,
    /// `exp[i] = g^i` and `log[g^i] = i` for a primitive `g`, when small enough.
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field").field("p", &self.p).field("k", &self.k).field("modulus", &self.modulus).finish()
    }
}

/// Fields up to this order get log tables.
const TABLE_MAX: u64 = 1 << 16;

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    // b monic
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let c = *r.last().unwrap() % p;
        let shift = r.len() - 1 - db;
        if c != 0 {
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - c * bi % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn digits(mut x: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = x % p;
        x /= p;
    }
    out
}

fn monic(low: u64, p: u64, deg: usize) -> Vec<u64> {
    let mut f = digits(low, p, deg);
    f.push(1);
    f
}

impl Field {
    pub fn new(p: u64, k: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidArgument("field degree must be positive".into()));
        }
        let order = p
            .checked_pow(k)
            .filter(|&o| o <= MAX_FIELD_ORDER)
            .ok_or_else(|| Error::InvalidArgument(format!("field of order {p}^{k} too large")))?;
        let deg = k as usize;
        let modulus = (0..order)
            .map(|low| monic(low, p, deg))
            .find(|f| {
                (1..=deg / 2).all(|d| {
                    (0..p.pow(d as u32)).all(|g| poly_rem(f, &monic(g, p, d), p).iter().any(|&c| c != 0))
                })
            })
            .expect("irreducible polynomials exist in every degree");
        let mut f = Field { p, k, order, modulus, exp: Vec::new(), log: Vec::new() };
        if order <= TABLE_MAX {
            let n = order - 1;
            let factors = prime_factors(n);
            let g = (2..order.max(3))
                .find(|&g| factors.iter().all(|&r| f.pow_slow(g, n / r) != 1))
                .unwrap_or(1);
            let mut exp = vec![0u32; n as usize];
            let mut log = vec![0u32; order as usize];
            let mut x = 1u64;
            for (i, e) in exp.iter_mut().enumerate() {
                *e = x as u32;
                log[x as usize] = i as u32;
                x = f.mul_slow(x, g);
            }
            f.exp = exp;
            f.log = log;
        }
        Ok(f)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn contains(&self, a: u64) -> bool {
        a < self.order
    }

    fn coords(&self, a: u64) -> Vec<u64> {
        digits(a, self.p, self.k as usize)
    }

    fn encode(&self, c: &[u64]) -> u64 {
        c.iter().rev().fold(0, |acc, &d| acc * self.p + d % self.p)
    }

    pub fn add(&self, mut a: u64, mut b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut out, mut place) = (0, 1);
        while a > 0 || b > 0 {
            out += (a % self.p + b % self.p) % self.p * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, mut a: u64) -> u64 {
        if self.p == 2 {
            return a;
        }
        let (mut out, mut place) = (0, 1);
        while a > 0 {
            out += (self.p - a % self.p) % self.p * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.exp.is_empty() {
            return self.mul_slow(a, b);
        }
        let n = self.exp.len();
        self.exp[(self.log[a as usize] as usize + self.log[b as usize] as usize) % n] as u64
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let (x, y) = (self.coords(a), self.coords(b));
        let mut prod = vec![0u64; x.len() + y.len() - 1];
        for (i, &u) in x.iter().enumerate() {
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u * v) % self.p;
            }
        }
        self.encode(&poly_rem(&prod, &self.modulus, self.p))
    }

    fn pow_slow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        if a == 0 {
            return (e == 0) as u64;
        }
        if !self.exp.is_empty() {
            let n = self.exp.len() as u64;
            return self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize] as u64;
        }
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `true` if `q` is a positive power of `p`.
    pub fn is_frobenius_power(&self, q: u64) -> bool {
        let mut x = self.p;
        while x < q {
            x = match x.checked_mul(self.p) {
                Some(y) => y,
                None => return false,
            };
        }
        x == q
    }
}

/// Element of `F_{p^k}[t]/t^N`; `coeffs.len()` is the precision `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series {
    pub coeffs: Vec<u64>,
}

impl Series {
    pub fn zero(n: usize) -> Series {
        Series { coeffs: vec![0; n] }
    }

    pub fn constant(c: u64, n: usize) -> Series {
        let mut s = Series::zero(n);
        if n > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    /// Pads with zeros or truncates to precision `n`.
    pub fn new(mut coeffs: Vec<u64>, n: usize) -> Series {
        coeffs.resize(n, 0);
        Series { coeffs }
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Lowest `i` with a nonzero coefficient; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn add(&self, f: &Field, other: &Series) -> Series {
        Series { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.add(a, b)).collect() }
    }

    pub fn sub(&self, f: &Field, other: &Series) -> Series {
        Series { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.sub(a, b)).collect() }
    }

    pub fn mul(&self, f: &Field, other: &Series) -> Series {
        let n = self.precision().min(other.precision());
        let mut out = vec![0u64; n];
        for (i, &a) in self.coeffs.iter().enumerate().take(n).filter(|(_, &a)| a != 0) {
            for (j, &b) in other.coeffs.iter().enumerate().take(n - i) {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Series { coeffs: out }
    }

    pub fn frobenius(&self, f: &Field, q: u64) -> Series {
        Series { coeffs: self.coeffs.iter().map(|&a| f.pow(a, q)).collect() }
    }

    /// Multiplication by `t^i`.
    pub fn shift(&self, i: usize) -> Series {
        let n = self.precision();
        let mut out = vec![0; n];
        if i < n {
            out[i..].copy_from_slice(&self.coeffs[..n - i]);
        }
        Series { coeffs: out }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
            terms.push(match (i, c) {
                (0, _) => format!("{c}"),
                (1, 1) => "t".into(),
                (1, _) => format!("{c}*t"),
                (_, 1) => format!("t^{i}"),
                _ => format!("{c}*t^{i}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

fn check_shapes(field: &Field, q: u64, m: &[Vec<Series>], v: &[Series]) -> Result<()> {
    if !field.is_frobenius_power(q) {
        return Err(Error::InvalidArgument(format!("q = {q} is not a power of p = {}", field.p)));
    }
    let n = v.len();
    if m.len() != n || m.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch(format!("matrix is not {n} x {n}")));
    }
    let all = m.iter().flatten().chain(v.iter());
    for s in all {
        if let Some(&c) = s.coeffs.iter().find(|&&c| !field.contains(c)) {
            return Err(Error::InvalidArgument(format!("{c} is not an element of F_{}^{}", field.p, field.k)));
        }
    }
    Ok(())
}

fn mat_frob_apply(field: &Field, q: u64, m: &[Vec<Series>], w: &[Series]) -> Vec<Series> {
    let sw: Vec<Series> = w.iter().map(|s| s.frobenius(field, q)).collect();
    m.iter()
        .map(|row| {
            row.iter()
                .zip(&sw)
                .fold(Series::zero(w[0].precision()), |acc, (a, b)| acc.add(field, &a.mul(field, b)))
        })
        .collect()
}

/// `w - M sigma(w) - v`.
pub fn residual(field: &Field, q: u64, m: &[Vec<Series>], v: &[Series], w: &[Series]) -> Result<Vec<Series>> {
    check_shapes(field, q, m, v)?;
    if w.len() != v.len() {
        return Err(Error::DimensionMismatch(format!("w has {} entries, v has {}", w.len(), v.len())));
    }
    if v.is_empty() {
        return Ok(Vec::new());
    }
    let n = v[0].precision();
    if m.iter().flatten().chain(w.iter()).any(|s| s.precision() != n) {
        return Err(Error::DimensionMismatch("series precisions differ".into()));
    }
    let msw = mat_frob_apply(field, q, m, w);
    Ok(w.iter().zip(&msw).zip(v).map(|((a, b), c)| a.sub(field, b).sub(field, c)).collect())
}

/// `F_p`-linear map `u -> u - M_0 u^q` on `F_{p^k}^n`, as columns in
/// `F_p^{nk}`, with a solver that puts free variables to zero.
struct ResidueMap {
    p: u64,
    k: usize,
    n: usize,
    cols: Vec<Vec<u64>>,
}

impl ResidueMap {
    fn new(field: &Field, q: u64, m0: &[Vec<u64>]) -> ResidueMap {
        let (n, k) = (m0.len(), field.k as usize);
        let mut cols = Vec::with_capacity(n * k);
        for j in 0..n {
            for b in 0..k {
                let e = field.p.pow(b as u32);
                let fe = field.pow(e, q);
                let img: Vec<u64> = (0..n)
                    .map(|i| {
                        let own = if i == j { e } else { 0 };
                        field.sub(own, field.mul(m0[i][j], fe))
                    })
                    .collect();
                cols.push(img.iter().flat_map(|&x| field.coords(x)).collect());
            }
        }
        ResidueMap { p: field.p, k, n, cols }
    }

    fn solve(&self, field: &Field, rhs: &[u64]) -> Option<Vec<u64>> {
        let p = self.p;
        let dim = self.n * self.k;
        let inv = |a: u64| -> u64 {
            // Fermat
            let (mut b, mut e, mut r) = (a % p, p - 2, 1u64);
            while e > 0 {
                if e & 1 == 1 {
                    r = r * b % p;
                }
                b = b * b % p;
                e >>= 1;
            }
            r
        };
        let target: Vec<u64> = rhs.iter().flat_map(|&x| field.coords(x)).collect();
        let mut a: Vec<Vec<u64>> =
            (0..dim).map(|r| (0..dim).map(|c| self.cols[c][r]).chain([target[r]]).collect()).collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..dim {
            let Some(piv) = (row..dim).find(|&r| a[r][col] != 0) else { continue };
            a.swap(row, piv);
            let s = inv(a[row][col]);
            for x in a[row].iter_mut() {
                *x = *x * s % p;
            }
            for r in 0..dim {
                if r != row && a[r][col] != 0 {
                    let c = a[r][col];
                    for cc in 0..=dim {
                        a[r][cc] = (a[r][cc] + p * p - c * a[row][cc] % p) % p;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        if a[row..].iter().any(|r| r[dim] != 0) {
            return None;
        }
        let mut x = vec![0u64; dim];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = a[r][dim];
        }
        Some(x.chunks(self.k).map(|c| field.encode(c)).collect())
    }
}

/// Solves `w - M sigma(w) = v` modulo `t^N`.
///
/// The constant term comes from the residue equation; each further step
/// writes the current error as `t^i r` and corrects by `t^i c` where
/// `c - M_0 c^q = r (mod t)`. A zero residue right-hand side gets the zero
/// correction, so `v = 0 (mod t)` gives `w = 0 (mod t)`.
pub fn solve_lang(field: &Field, q: u64, m: &[Vec<Series>], v: &[Series], prec: usize) -> Result<Vec<Series>> {
    check_shapes(field, q, m, v)?;
    if prec == 0 {
        return Err(Error::InvalidArgument("precision must be at least 1".into()));
    }
    let n = v.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let m: Vec<Vec<Series>> =
        m.iter().map(|row| row.iter().map(|s| Series::new(s.coeffs.clone(), prec)).collect()).collect();
    let v: Vec<Series> = v.iter().map(|s| Series::new(s.coeffs.clone(), prec)).collect();
    let m0: Vec<Vec<u64>> = m.iter().map(|row| row.iter().map(|s| s.coeffs[0]).collect()).collect();
    let lmap = ResidueMap::new(field, q, &m0);
    let too_small = Error::ResidueFieldTooSmall { p: field.p, k: field.k };

    let mut w = vec![Series::zero(prec); n];
    for i in 0..prec {
        // err = v - (w - M sigma(w)), zero below t^i
        let err: Vec<Series> = residual(field, q, &m, &v, &w)?.iter().map(|s| Series::zero(prec).sub(field, s)).collect();
        debug_assert!(err.iter().all(|s| s.coeffs[..i].iter().all(|&c| c == 0)));
        let rhs: Vec<u64> = err.iter().map(|s| s.coeffs[i]).collect();
        let c = lmap.solve(field, &rhs).ok_or(too_small.clone())?;
        for (wj, cj) in w.iter_mut().zip(c) {
            wj.coeffs[i] = field.add(wj.coeffs[i], cj);
        }
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields() {
        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]); // X^2 + X + 1
        for a in 1..4 {
            assert_eq!(f4.pow(a, 3), 1);
        }
        let f9 = Field::new(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        for a in 1..9 {
            assert_eq!(f9.pow(a, 8), 1);
            assert_eq!(f9.mul(a, f9.pow(a, 7)), 1);
        }
        assert!(Field::new(4, 1).is_err());
        assert!(f9.is_frobenius_power(3) && f9.is_frobenius_power(27) && !f9.is_frobenius_power(6));
    }

    #[test]
    fn field_axioms_gf8() {
        let f = Field::new(2, 3).unwrap();
        for a in 0..8 {
            for b in 0..8 {
                for c in 0..8 {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn zero_matrix() {
        let f = Field::new(3, 1).unwrap();
        let v = vec![Series::new(vec![1, 2, 0, 1], 4), Series::new(vec![0, 0, 2], 4)];
        let m = vec![vec![Series::zero(4); 2]; 2];
        assert_eq!(solve_lang(&f, 3, &m, &v, 4).unwrap(), v);
    }

    #[test]
    fn geometric_series() {
        let f = Field::new(2, 1).unwrap();
        let m = vec![vec![Series::new(vec![0, 1], 3)]];
        let w = solve_lang(&f, 2, &m, &[Series::constant(1, 3)], 3).unwrap();
        assert_eq!(w[0].coeffs, vec![1, 1, 1]);
        assert_eq!(w[0].to_string(), "1 + t + t^2");
    }

    #[test]
    fn congruence_and_residual() {
        // residue map u -> u - M_0 u^4 is injective on F_16^2 (brute force)
        let f = Field::new(2, 4).unwrap();
        let m = vec![vec![Series::new(vec![3, 1, 7], 5), Series::new(vec![5], 5)], vec![
            Series::new(vec![9, 9], 5),
            Series::new(vec![12, 0, 1], 5),
        ]];
        let v = vec![Series::new(vec![0, 1, 2], 5), Series::new(vec![0, 0, 15, 3], 5)];
        let w = solve_lang(&f, 4, &m, &v, 5).unwrap();
        assert!(w.iter().all(|s| s.coeffs[0] == 0));
        assert!(residual(&f, 4, &m, &v, &w).unwrap().iter().all(Series::is_zero));
        let mut bad = w.clone();
        bad[1].coeffs[2] ^= 1;
        assert!(!residual(&f, 4, &m, &v, &bad).unwrap().iter().all(Series::is_zero));
        assert!(residual(&f, 4, &vec![vec![Series::zero(5); 2]; 2], &v, &v).unwrap().iter().all(Series::is_zero));
    }

    #[test]
    fn unsolvable_residue() {
        // u - u^2 = 1 has no root in F_2
        let f = Field::new(2, 1).unwrap();
        let m = vec![vec![Series::constant(1, 2)]];
        assert_eq!(
            solve_lang(&f, 2, &m, &[Series::constant(1, 2)], 2),
            Err(Error::ResidueFieldTooSmall { p: 2, k: 1 })
        );
        // but it has one in F_4
        let f4 = Field::new(2, 2).unwrap();
        let w = solve_lang(&f4, 2, &m, &[Series::constant(1, 2)], 2).unwrap();
        assert!(residual(&f4, 2, &m, &[Series::constant(1, 2)], &w).unwrap()[0].is_zero());
    }
}
