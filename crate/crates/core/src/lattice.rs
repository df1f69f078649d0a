//! Exact integer and rational linear algebra on small dense matrices.
//!
//! Matrices here are tiny (at most a few dozen rows), so everything is plain
//! `Vec<Vec<_>>` with `i128` intermediates for the integer reductions.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number.
pub type Q = BigRational;

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// A point of `X_*(T) ⊗ Q`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CochVec(pub Vec<Q>);

impl CochVec {
    pub fn zero(d: usize) -> Self {
        CochVec(vec![Q::zero(); d])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        CochVec(v.iter().map(|&x| q_int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &CochVec) -> CochVec {
        CochVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &CochVec) -> CochVec {
        CochVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Q) -> CochVec {
        CochVec(self.0.iter().map(|a| a * c).collect())
    }

    /// Pairing with an integral character.
    pub fn pair(&self, chi: &[i64]) -> Q {
        let mut acc = Q::zero();
        for (a, &c) in self.0.iter().zip(chi) {
            if c != 0 {
                acc += a * BigInt::from(c);
            }
        }
        acc
    }

    /// Applies an integer matrix (row-major, `d x d`).
    pub fn apply(&self, m: &[i64]) -> CochVec {
        let d = self.0.len();
        let mut out = Vec::with_capacity(d);
        for i in 0..d {
            let mut acc = Q::zero();
            for j in 0..d {
                let c = m[i * d + j];
                if c != 0 {
                    acc += &self.0[j] * BigInt::from(c);
                }
            }
            out.push(acc);
        }
        CochVec(out)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Returns the integral vector if every coordinate is an integer.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|a| if a.is_integer() { a.to_integer().to_i64() } else { None })
            .collect()
    }

    /// Least common multiple of the coordinate denominators.
    pub fn denominator(&self) -> BigInt {
        use num_integer::Integer;
        self.0.iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()))
    }
}

impl fmt::Display for CochVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `m * v` for a row-major `d x d` matrix.
pub fn mat_vec(m: &[i64], v: &[i64]) -> Vec<i64> {
    let d = v.len();
    (0..d).map(|i| dot(&m[i * d..(i + 1) * d], v)).collect()
}

/// `a * b` for row-major `d x d` matrices.
pub fn mat_mul(a: &[i64], b: &[i64], d: usize) -> Vec<i64> {
    let mut out = vec![0i64; d * d];
    for i in 0..d {
        for k in 0..d {
            let c = a[i * d + k];
            if c == 0 {
                continue;
            }
            for j in 0..d {
                out[i * d + j] += c * b[k * d + j];
            }
        }
    }
    out
}

pub fn identity(d: usize) -> Vec<i64> {
    let mut m = vec![0i64; d * d];
    for i in 0..d {
        m[i * d + i] = 1;
    }
    m
}

/// Rank over `Q` of a list of integer row vectors.
pub fn rank_rows(rows: &[Vec<i64>]) -> usize {
    let q: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| q_int(x)).collect()).collect();
    rank_q(q)
}

pub fn rank_q(mut rows: Vec<Vec<Q>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let p = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = &rows[r][col] / &p;
                for c in col..ncols {
                    let t = &f * &rows[rank][c];
                    rows[r][c] -= t;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Solves `sum_j c_j * columns[j] = target` over `Q`.
///
/// Returns `None` when the system is inconsistent. Free variables (if the
/// columns are dependent) are set to zero.
pub fn solve_columns(columns: &[Vec<Q>], target: &[Q]) -> Option<Vec<Q>> {
    let d = target.len();
    let k = columns.len();
    // augmented d x (k+1)
    let mut a: Vec<Vec<Q>> = (0..d)
        .map(|i| {
            let mut row: Vec<Q> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..k {
        let Some(piv) = (r..d).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        let p = a[r][col].clone();
        for c in col..=k {
            a[r][c] = &a[r][c] / &p;
        }
        for i in 0..d {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for c in col..=k {
                    let t = &f * &a[r][c];
                    a[i][c] -= t;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == d {
            break;
        }
    }
    if (r..d).any(|i| !a[i][k].is_zero()) {
        return None;
    }
    let mut sol = vec![Q::zero(); k];
    for (row, &col) in pivots.iter().enumerate() {
        sol[col] = a[row][k].clone();
    }
    Some(sol)
}

/// Integer columns to rational columns.
pub fn q_columns(cols: &[Vec<i64>]) -> Vec<Vec<Q>> {
    cols.iter().map(|c| c.iter().map(|&x| q_int(x)).collect()).collect()
}

/// Smith reduction `U A V = D` of an integer matrix, keeping the unimodular
/// left factor `U` and its inverse.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// `rows x rows`, row-major in nested vectors.
    pub u: Vec<Vec<i64>>,
    pub u_inv: Vec<Vec<i64>>,
    /// Diagonal of `D`; entries beyond the rank are zero. Length `rows`.
    pub diag: Vec<i64>,
    pub rank: usize,
}

/// Computes the Smith form of `a` given as `rows x cols` nested rows.
pub fn smith_form(a: &[Vec<i64>], rows: usize) -> SmithForm {
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u: Vec<Vec<i128>> = (0..rows)
        .map(|i| (0..rows).map(|j| (i == j) as i128).collect())
        .collect();
    let mut ui = u.clone();

    // row_i -= q * row_t
    fn row_sub(m: &mut [Vec<i128>], u: &mut [Vec<i128>], ui: &mut [Vec<i128>], i: usize, t: usize, q: i128) {
        if q == 0 {
            return;
        }
        for c in 0..m[i].len() {
            let v = m[t][c];
            m[i][c] -= q * v;
        }
        for c in 0..u[i].len() {
            let v = u[t][c];
            u[i][c] -= q * v;
        }
        for r in 0..ui.len() {
            let v = ui[r][i];
            ui[r][t] += q * v;
        }
    }
    fn row_swap(m: &mut [Vec<i128>], u: &mut [Vec<i128>], ui: &mut [Vec<i128>], i: usize, t: usize) {
        if i == t {
            return;
        }
        m.swap(i, t);
        u.swap(i, t);
        for r in ui.iter_mut() {
            r.swap(i, t);
        }
    }
    fn row_neg(m: &mut [Vec<i128>], u: &mut [Vec<i128>], ui: &mut [Vec<i128>], t: usize) {
        for x in m[t].iter_mut() {
            *x = -*x;
        }
        for x in u[t].iter_mut() {
            *x = -*x;
        }
        for r in ui.iter_mut() {
            r[t] = -r[t];
        }
    }
    fn col_sub(m: &mut [Vec<i128>], j: usize, t: usize, q: i128) {
        for r in m.iter_mut() {
            let v = r[t];
            r[j] -= q * v;
        }
    }
    fn col_swap(m: &mut [Vec<i128>], j: usize, t: usize) {
        for r in m.iter_mut() {
            r.swap(j, t);
        }
    }

    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        row_swap(&mut m, &mut u, &mut ui, t, bi);
        col_swap(&mut m, t, bj);
        loop {
            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t].div_euclid(p);
                row_sub(&mut m, &mut u, &mut ui, i, t, q);
                if m[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j].div_euclid(p);
                col_sub(&mut m, j, t, q);
                if m[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                // divisibility of the remaining block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| m[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        // row_t += row_i
                        row_sub(&mut m, &mut u, &mut ui, t, i, -1);
                        continue;
                    }
                }
            }
            // move the smallest nonzero entry of row t / column t to the pivot
            let mut best = (t, t);
            for i in t..rows {
                if m[i][t] != 0 && (m[best.0][best.1] == 0 || m[i][t].abs() < m[best.0][best.1].abs()) {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if m[t][j] != 0 && (m[best.0][best.1] == 0 || m[t][j].abs() < m[best.0][best.1].abs()) {
                    best = (t, j);
                }
            }
            row_swap(&mut m, &mut u, &mut ui, t, best.0);
            col_swap(&mut m, t, best.1);
        }
        if m[t][t] < 0 {
            row_neg(&mut m, &mut u, &mut ui, t);
        }
        t += 1;
    }
    let rank = t;

    // Hermite-normalize the rows of U spanning the annihilator of A, so the
    // free coordinates come out with positive leading coefficients.
    let mut pivot_row = rank;
    for col in 0..rows {
        if pivot_row >= rows {
            break;
        }
        loop {
            let nz: Vec<usize> = (pivot_row..rows).filter(|&r| u[r][col] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let &sm = nz.iter().min_by_key(|&&r| u[r][col].abs()).unwrap();
            row_swap(&mut m, &mut u, &mut ui, pivot_row, sm);
            let p = u[pivot_row][col];
            let mut done = true;
            for r in pivot_row + 1..rows {
                let q = u[r][col].div_euclid(p);
                row_sub(&mut m, &mut u, &mut ui, r, pivot_row, q);
                if u[r][col] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if u[pivot_row][col] != 0 {
            if u[pivot_row][col] < 0 {
                row_neg(&mut m, &mut u, &mut ui, pivot_row);
            }
            let p = u[pivot_row][col];
            for r in rank..pivot_row {
                let q = u[r][col].div_euclid(p);
                row_sub(&mut m, &mut u, &mut ui, r, pivot_row, q);
            }
            pivot_row += 1;
        }
    }

    let mut diag = vec![0i64; rows];
    for (i, d) in diag.iter_mut().enumerate().take(rank) {
        *d = m[i][i] as i64;
    }
    let conv = |x: Vec<Vec<i128>>| -> Vec<Vec<i64>> {
        x.into_iter().map(|r| r.into_iter().map(|v| v as i64).collect()).collect()
    };
    SmithForm { u: conv(u), u_inv: conv(ui), diag, rank }
}

/// Element of a finitely generated abelian quotient `Z^m / L` in the
/// canonical coordinates produced by [`Pi1Quotient`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Pi1Element(pub Vec<i64>);

impl fmt::Display for Pi1Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

/// Presentation of `X_* / (span of generators)` through invariant factors.
///
/// Cocharacters are first written in coordinates of a basis of `X_*` (for
/// data whose cocharacter lattice is a proper sublattice of the ambient
/// `Z^d`), then mapped through the Smith left factor. Coordinates with
/// invariant factor 1 are dropped; torsion coordinates are reduced into
/// `[0, d_i)`, free coordinates are kept as integers.
#[derive(Clone, Debug)]
pub struct Pi1Quotient {
    /// Rows of `U` that survive (one per output coordinate).
    rows: Vec<Vec<i64>>,
    /// Modulus for each kept row, `0` for a free coordinate.
    moduli: Vec<i64>,
    /// Columns of `U^{-1}` matching the kept rows, used for lifting.
    lift_cols: Vec<Vec<i64>>,
}

impl Pi1Quotient {
    /// `generators` are given in lattice coordinates (length `m`).
    pub fn new(generators: &[Vec<i64>], m: usize) -> Self {
        // matrix with generators as columns: m x g
        let a: Vec<Vec<i64>> = (0..m)
            .map(|i| generators.iter().map(|g| g[i]).collect())
            .collect();
        let a = if generators.is_empty() { vec![Vec::new(); m] } else { a };
        let sf = smith_form(&a, m);
        let mut rows = Vec::new();
        let mut moduli = Vec::new();
        let mut lift_cols = Vec::new();
        for i in 0..m {
            let d = if i < sf.rank { sf.diag[i] } else { 0 };
            if d == 1 {
                continue;
            }
            rows.push(sf.u[i].clone());
            moduli.push(d);
            lift_cols.push((0..m).map(|r| sf.u_inv[r][i]).collect());
        }
        Pi1Quotient { rows, moduli, lift_cols }
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub fn is_trivial(&self) -> bool {
        self.moduli.is_empty()
    }

    /// Class of a vector given in lattice coordinates.
    pub fn class_of_coords(&self, c: &[i64]) -> Pi1Element {
        Pi1Element(
            self.rows
                .iter()
                .zip(&self.moduli)
                .map(|(r, &m)| {
                    let v = dot(r, c);
                    if m == 0 {
                        v
                    } else {
                        v.rem_euclid(m)
                    }
                })
                .collect(),
        )
    }

    pub fn normalize(&self, e: &Pi1Element) -> Pi1Element {
        Pi1Element(
            e.0.iter()
                .zip(&self.moduli)
                .map(|(&v, &m)| if m == 0 { v } else { v.rem_euclid(m) })
                .collect(),
        )
    }

    pub fn add(&self, a: &Pi1Element, b: &Pi1Element) -> Pi1Element {
        self.normalize(&Pi1Element(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect()))
    }

    /// A vector in lattice coordinates whose class is `e`.
    pub fn lift_coords(&self, e: &Pi1Element, m: usize) -> Vec<i64> {
        let mut out = vec![0i64; m];
        for (col, &k) in self.lift_cols.iter().zip(&e.0) {
            for r in 0..m {
                out[r] += col[r] * k;
            }
        }
        out
    }
}

/// Absolute value helper for rationals in comparisons.
pub fn q_is_nonneg(x: &Q) -> bool {
    !x.is_negative()
}
