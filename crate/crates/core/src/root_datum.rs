//! Based root data with a diagram automorphism.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::lattice::{
    self, dot, identity, mat_mul, mat_vec, q_columns, q_int, rank_rows, solve_columns, CochVec,
    Pi1Element, Pi1Quotient, Q,
};
use crate::affine::AffineElt;
use crate::weyl::{WeylElt, WeylGroup};

const MAX_ROOTS: usize = 4000;
const MAX_DELTA_ORDER: usize = 48;

/// Which group a computation lives in: `G` itself or the standard Levi `M_J`
/// (0-based simple indices of `G`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub enum Level {
    #[default]
    G,
    Levi(Vec<usize>),
}

/// Raw description of a root datum, before validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatumSpec {
    pub name: String,
    pub ambient_rank: usize,
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
    pub delta_perm: Vec<usize>,
    /// Row-major `d x d` matrix acting on cocharacters.
    pub delta_matrix: Vec<Vec<i64>>,
    /// Basis of the cocharacter lattice inside `Z^d`; `None` means all of `Z^d`.
    pub lattice_basis: Option<Vec<Vec<i64>>>,
}

fn type_a_roots(n: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let mut roots = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let mut v = vec![0i64; n];
        v[i] = 1;
        v[i + 1] = -1;
        roots.push(v);
    }
    (roots.clone(), roots)
}

fn id_rows(d: usize) -> Vec<Vec<i64>> {
    (0..d).map(|i| (0..d).map(|j| (i == j) as i64).collect()).collect()
}

impl DatumSpec {
    pub fn gl(n: usize) -> Self {
        let (roots, coroots) = type_a_roots(n);
        DatumSpec {
            name: format!("GL:{n}"),
            ambient_rank: n,
            delta_perm: (0..roots.len()).collect(),
            simple_roots: roots,
            simple_coroots: coroots,
            delta_matrix: id_rows(n),
            lattice_basis: None,
        }
    }

    pub fn sl(n: usize) -> Self {
        let mut s = DatumSpec::gl(n);
        s.name = format!("SL:{n}");
        s.lattice_basis = Some(s.simple_coroots.clone());
        s
    }

    /// Symplectic group of rank `n2 / 2` (type C).
    pub fn sp(n2: usize) -> Self {
        let n = n2 / 2;
        let mut roots = Vec::new();
        let mut coroots = Vec::new();
        for i in 0..n.saturating_sub(1) {
            let mut v = vec![0i64; n];
            v[i] = 1;
            v[i + 1] = -1;
            roots.push(v.clone());
            coroots.push(v);
        }
        if n > 0 {
            let mut a = vec![0i64; n];
            a[n - 1] = 2;
            let mut c = vec![0i64; n];
            c[n - 1] = 1;
            roots.push(a);
            coroots.push(c);
        }
        DatumSpec {
            name: format!("SP:{n2}"),
            ambient_rank: n,
            delta_perm: (0..roots.len()).collect(),
            simple_roots: roots,
            simple_coroots: coroots,
            delta_matrix: id_rows(n),
            lattice_basis: None,
        }
    }

    /// Parses `GL:n`, `SL:n` or `SP:2n`.
    pub fn builtin(text: &str) -> Result<Self> {
        let (kind, n) = text
            .split_once(':')
            .ok_or_else(|| Error::InvalidDatum(format!("expected KIND:n, got {text:?}")))?;
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| Error::InvalidDatum(format!("bad rank in {text:?}")))?;
        match kind.trim().to_ascii_uppercase().as_str() {
            "GL" if n >= 1 => Ok(DatumSpec::gl(n)),
            "SL" if n >= 2 => Ok(DatumSpec::sl(n)),
            "SP" if n >= 2 && n.is_multiple_of(2) => Ok(DatumSpec::sp(n)),
            _ => Err(Error::InvalidDatum(format!("unknown built-in datum {text:?}"))),
        }
    }

    /// Replaces the diagram automorphism by the given permutation of simple
    /// indices. For type A built-ins the reversal is realized on the lattice
    /// by `lambda -> -rev(lambda)`.
    pub fn with_delta_perm(mut self, perm: Vec<usize>) -> Result<Self> {
        let r = self.simple_roots.len();
        if perm.len() != r {
            return Err(Error::InvalidDatum(format!("delta permutation must have {r} entries")));
        }
        if perm.iter().enumerate().all(|(i, &p)| i == p) {
            self.delta_matrix = id_rows(self.ambient_rank);
            self.delta_perm = perm;
            return Ok(self);
        }
        let reversal = perm.iter().enumerate().all(|(i, &p)| p + i + 1 == r);
        let type_a = self.name.starts_with("GL:") || self.name.starts_with("SL:");
        if !(reversal && type_a) {
            return Err(Error::InvalidDatum(
                "only the identity or (for GL/SL) the diagram flip can be given as a permutation"
                    .to_string(),
            ));
        }
        let d = self.ambient_rank;
        self.delta_matrix = (0..d)
            .map(|i| (0..d).map(|j| if i + j + 1 == d { -1 } else { 0 }).collect())
            .collect();
        self.delta_perm = perm;
        Ok(self)
    }
}

/// A validated based root datum with cached root system, Weyl group and
/// fundamental-group presentations.
#[derive(Clone, Debug)]
pub struct RootDatum {
    name: String,
    d: usize,
    r: usize,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    coeffs: Vec<Vec<i64>>,
    coeff_index: BTreeMap<Vec<i64>, usize>,
    n_pos: usize,
    cartan: Vec<Vec<i64>>,
    delta_perm: Vec<usize>,
    delta_matrix: Vec<i64>,
    delta_order: usize,
    delta_root: Vec<usize>,
    /// Basis vectors of the cocharacter lattice.
    basis: Vec<Vec<i64>>,
    full_lattice: bool,
    weyl: WeylGroup,
    rho2: Vec<i64>,
    components: Vec<Vec<usize>>,
    highest: Vec<usize>,
    pi1: Pi1Quotient,
    omega: Pi1Quotient,
    level: Level,
    spec: DatumSpec,
    gens: Vec<AffineElt>,
}

impl RootDatum {
    pub fn gl(n: usize) -> Result<Self> {
        RootDatum::new(DatumSpec::gl(n))
    }

    pub fn sl(n: usize) -> Result<Self> {
        RootDatum::new(DatumSpec::sl(n))
    }

    pub fn sp(n2: usize) -> Result<Self> {
        RootDatum::new(DatumSpec::sp(n2))
    }

    pub fn builtin(text: &str) -> Result<Self> {
        RootDatum::new(DatumSpec::builtin(text)?)
    }

    pub fn new(spec: DatumSpec) -> Result<Self> {
        Self::with_level(spec, Level::G)
    }

    fn with_level(spec: DatumSpec, level: Level) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidDatum(m));
        let d = spec.ambient_rank;
        let r = spec.simple_roots.len();
        if d == 0 {
            return bad("ambient rank must be positive".into());
        }
        if spec.simple_coroots.len() != r {
            return bad("number of simple roots and coroots differ".into());
        }
        if spec.simple_roots.iter().chain(&spec.simple_coroots).any(|v| v.len() != d) {
            return bad(format!("every simple root and coroot must have {d} entries"));
        }
        if rank_rows(&spec.simple_roots) != r || rank_rows(&spec.simple_coroots) != r {
            return bad("simple roots and coroots must be linearly independent".into());
        }
        let cartan: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..r).map(|j| dot(&spec.simple_roots[i], &spec.simple_coroots[j])).collect())
            .collect();
        for i in 0..r {
            if cartan[i][i] != 2 {
                return bad(format!("<alpha_{0}, alpha_{0}^vee> must be 2", i + 1));
            }
            for j in 0..r {
                if i != j && (cartan[i][j] > 0 || (cartan[i][j] == 0) != (cartan[j][i] == 0)) {
                    return bad("Cartan matrix is not a generalized Cartan matrix".into());
                }
                if i != j && cartan[i][j] * cartan[j][i] > 3 {
                    return bad("Cartan matrix is not of finite type".into());
                }
            }
        }

        // lattice
        let full_lattice = spec.lattice_basis.is_none();
        let basis = spec.lattice_basis.clone().unwrap_or_else(|| id_rows(d));
        if basis.iter().any(|b| b.len() != d) || rank_rows(&basis) != basis.len() {
            return bad("lattice basis must consist of independent vectors in Z^d".into());
        }

        // positive roots by reflection closure, tracking simple-root coefficients
        let mut roots: Vec<Vec<i64>> = spec.simple_roots.clone();
        let mut coroots: Vec<Vec<i64>> = spec.simple_coroots.clone();
        let mut coeffs: Vec<Vec<i64>> =
            (0..r).map(|i| (0..r).map(|j| (i == j) as i64).collect()).collect();
        let mut seen: BTreeMap<Vec<i64>, usize> =
            coeffs.iter().enumerate().map(|(k, c)| (c.clone(), k)).collect();
        let mut head = 0;
        while head < roots.len() {
            for i in 0..r {
                let p = dot(&roots[head], &spec.simple_coroots[i]);
                if p == 0 {
                    continue;
                }
                let mut c = coeffs[head].clone();
                c[i] -= p;
                if c.iter().any(|&x| x < 0) || seen.contains_key(&c) {
                    continue;
                }
                let q = dot(&spec.simple_roots[i], &coroots[head]);
                let root: Vec<i64> =
                    roots[head].iter().zip(&spec.simple_roots[i]).map(|(a, b)| a - p * b).collect();
                let coroot: Vec<i64> =
                    coroots[head].iter().zip(&spec.simple_coroots[i]).map(|(a, b)| a - q * b).collect();
                seen.insert(c.clone(), roots.len());
                roots.push(root);
                coroots.push(coroot);
                coeffs.push(c);
                if roots.len() > MAX_ROOTS {
                    return bad("root system is not finite".into());
                }
            }
            head += 1;
        }
        // simple roots first, then by height
        let mut order: Vec<usize> = (0..roots.len()).collect();
        order.sort_by_key(|&k| {
            let h: i64 = coeffs[k].iter().sum();
            (h, core::cmp::Reverse(coeffs[k].clone()))
        });
        let n_pos = roots.len();
        let mut all_roots = Vec::with_capacity(2 * n_pos);
        let mut all_coroots = Vec::with_capacity(2 * n_pos);
        let mut all_coeffs = Vec::with_capacity(2 * n_pos);
        for &k in &order {
            all_roots.push(roots[k].clone());
            all_coroots.push(coroots[k].clone());
            all_coeffs.push(coeffs[k].clone());
        }
        for k in 0..n_pos {
            all_roots.push(all_roots[k].iter().map(|x| -x).collect());
            all_coroots.push(all_coroots[k].iter().map(|x| -x).collect());
            all_coeffs.push(all_coeffs[k].iter().map(|x| -x).collect());
        }
        let coeff_index: BTreeMap<Vec<i64>, usize> =
            all_coeffs.iter().enumerate().map(|(k, c)| (c.clone(), k)).collect();

        for k in 0..2 * n_pos {
            if dot(&all_roots[k], &all_coroots[k]) != 2 {
                return bad("root/coroot pairing inconsistent".into());
            }
        }

        // delta
        let mut seen_p = vec![false; r];
        if spec.delta_perm.len() != r || spec.delta_perm.iter().any(|&p| p >= r || core::mem::replace(&mut seen_p[p], true)) {
            return bad("delta.perm must be a permutation of the simple indices".into());
        }
        if spec.delta_matrix.len() != d || spec.delta_matrix.iter().any(|row| row.len() != d) {
            return bad(format!("delta.matrix must be {d} x {d}"));
        }
        let dm: Vec<i64> = spec.delta_matrix.iter().flatten().copied().collect();
        for i in 0..r {
            let j = spec.delta_perm[i];
            if mat_vec(&dm, &spec.simple_coroots[i]) != spec.simple_coroots[j] {
                return bad("delta.matrix does not map simple coroots according to delta.perm".into());
            }
            // <alpha_j, D lambda> = <alpha_i, lambda>
            let dt: Vec<i64> = (0..d).map(|c| (0..d).map(|k| spec.simple_roots[j][k] * dm[k * d + c]).sum()).collect();
            if dt != spec.simple_roots[i] {
                return bad("delta.matrix does not map simple roots according to delta.perm".into());
            }
        }
        let id = identity(d);
        let mut pw = dm.clone();
        let mut delta_order = 1;
        while pw != id {
            pw = mat_mul(&pw, &dm, d);
            delta_order += 1;
            if delta_order > MAX_DELTA_ORDER {
                return bad("delta has infinite or very large order".into());
            }
        }
        let delta_root: Vec<usize> = all_coeffs
            .iter()
            .map(|c| {
                let mut img = vec![0i64; r];
                for i in 0..r {
                    img[spec.delta_perm[i]] = c[i];
                }
                coeff_index[&img]
            })
            .collect();

        // the lattice must contain the coroots and be delta-stable
        let basis_q = q_columns(&basis);
        let coords_of = |v: &[i64]| -> Option<Vec<i64>> {
            if full_lattice {
                return Some(v.to_vec());
            }
            let t: Vec<Q> = v.iter().map(|&x| q_int(x)).collect();
            let c = solve_columns(&basis_q, &t)?;
            // verify consistency (solve_columns zeroes free variables)
            c.iter().map(|x| if x.is_integer() { lattice_to_i64(x) } else { None }).collect()
        };
        for c in &spec.simple_coroots {
            if coords_of(c).is_none() {
                return bad("simple coroots must lie in the cocharacter lattice".into());
            }
        }
        for b in &basis {
            if coords_of(&mat_vec(&dm, b)).is_none() {
                return bad("delta.matrix does not preserve the cocharacter lattice".into());
            }
        }

        // Weyl group
        let refl_perms: Vec<Vec<u32>> = (0..r)
            .map(|i| {
                all_coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| {
                        let p = dot(&all_roots[k], &spec.simple_coroots[i]);
                        let mut c2 = c.clone();
                        c2[i] -= p;
                        coeff_index[&c2] as u32
                    })
                    .collect()
            })
            .collect();
        let refl_mats: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                let mut m = identity(d);
                for a in 0..d {
                    for b in 0..d {
                        m[a * d + b] -= spec.simple_coroots[i][a] * spec.simple_roots[i][b];
                    }
                }
                m
            })
            .collect();
        let weyl = WeylGroup::build(&refl_perms, &refl_mats, n_pos, d, &spec.delta_perm)?;

        let mut rho2 = vec![0i64; d];
        for root in &all_roots[..n_pos] {
            for (a, b) in rho2.iter_mut().zip(root) {
                *a += b;
            }
        }
        for c in &spec.simple_coroots {
            if dot(&rho2, c) != 2 {
                return bad("<rho, alpha^vee> != 1 for some simple coroot".into());
            }
        }

        // connected components of the Dynkin diagram
        let mut comp_of = vec![usize::MAX; r];
        let mut components: Vec<Vec<usize>> = Vec::new();
        for s in 0..r {
            if comp_of[s] != usize::MAX {
                continue;
            }
            let c = components.len();
            let mut stack = vec![s];
            comp_of[s] = c;
            let mut members = Vec::new();
            while let Some(i) = stack.pop() {
                members.push(i);
                for j in 0..r {
                    if cartan[i][j] != 0 && comp_of[j] == usize::MAX {
                        comp_of[j] = c;
                        stack.push(j);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        let highest: Vec<usize> = components
            .iter()
            .map(|comp| {
                (0..n_pos)
                    .filter(|&k| all_coeffs[k].iter().enumerate().all(|(i, &c)| c == 0 || comp.contains(&i)))
                    .max_by_key(|&k| all_coeffs[k].iter().sum::<i64>())
                    .expect("component has a simple root")
            })
            .collect();

        // fundamental group presentations, in lattice coordinates
        let m = basis.len();
        let coroot_coords: Vec<Vec<i64>> =
            spec.simple_coroots.iter().map(|c| coords_of(c).expect("checked")).collect();
        let mut gens = coroot_coords.clone();
        for b in &basis {
            let db = mat_vec(&dm, b);
            let diff: Vec<i64> = b.iter().zip(&db).map(|(x, y)| x - y).collect();
            gens.push(coords_of(&diff).expect("checked"));
        }
        let pi1 = Pi1Quotient::new(&gens, m);
        let omega = Pi1Quotient::new(&coroot_coords, m);

        let mut rd = RootDatum {
            name: spec.name.clone(),
            d,
            r,
            simple_roots: spec.simple_roots.clone(),
            simple_coroots: spec.simple_coroots.clone(),
            roots: all_roots,
            coroots: all_coroots,
            coeffs: all_coeffs,
            coeff_index,
            n_pos,
            cartan,
            delta_perm: spec.delta_perm.clone(),
            delta_matrix: dm,
            delta_order,
            delta_root,
            basis,
            full_lattice,
            weyl,
            rho2,
            components,
            highest,
            pi1,
            omega,
            level,
            spec,
            gens: Vec::new(),
        };
        rd.gens = rd.compute_affine_generators();
        Ok(rd)
    }

    /// Finite simple reflections `s_1..s_r` followed by one `s_0` per
    /// irreducible component.
    pub fn affine_generators(&self) -> &[AffineElt] {
        &self.gens
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn spec(&self) -> &DatumSpec {
        &self.spec
    }

    pub fn level(&self) -> &Level {
        &self.level
    }

    pub fn ambient_rank(&self) -> usize {
        self.d
    }

    /// Number of simple roots (semisimple rank).
    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    pub fn n_pos(&self) -> usize {
        self.n_pos
    }

    pub fn n_roots(&self) -> usize {
        2 * self.n_pos
    }

    pub fn root(&self, k: usize) -> &[i64] {
        &self.roots[k]
    }

    pub fn coroot(&self, k: usize) -> &[i64] {
        &self.coroots[k]
    }

    /// Coefficients of root `k` in the simple roots.
    pub fn root_coeffs(&self, k: usize) -> &[i64] {
        &self.coeffs[k]
    }

    pub fn root_index(&self, coeffs: &[i64]) -> Option<usize> {
        self.coeff_index.get(coeffs).copied()
    }

    /// Index of `-root k`.
    pub fn neg_root(&self, k: usize) -> usize {
        if k < self.n_pos {
            k + self.n_pos
        } else {
            k - self.n_pos
        }
    }

    pub fn simple_root(&self, i: usize) -> &[i64] {
        &self.simple_roots[i]
    }

    pub fn simple_coroot(&self, i: usize) -> &[i64] {
        &self.simple_coroots[i]
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn delta_perm(&self) -> &[usize] {
        &self.delta_perm
    }

    pub fn delta_matrix(&self) -> &[i64] {
        &self.delta_matrix
    }

    pub fn delta_order(&self) -> usize {
        self.delta_order
    }

    pub fn delta_is_trivial(&self) -> bool {
        self.delta_order == 1
    }

    /// Index of `delta(root k)`.
    pub fn delta_root(&self, k: usize) -> usize {
        self.delta_root[k]
    }

    pub fn delta_cochar(&self, lambda: &[i64]) -> Vec<i64> {
        mat_vec(&self.delta_matrix, lambda)
    }

    /// `delta^{-1}` on cocharacters.
    pub fn delta_inv_cochar(&self, lambda: &[i64]) -> Vec<i64> {
        let mut v = lambda.to_vec();
        for _ in 1..self.delta_order {
            v = self.delta_cochar(&v);
        }
        v
    }

    /// Twice the half-sum of positive roots.
    pub fn two_rho(&self) -> &[i64] {
        &self.rho2
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn is_irreducible(&self) -> bool {
        self.components.len() == 1
    }

    /// Root index of the highest root of each component.
    pub fn highest_roots(&self) -> &[usize] {
        &self.highest
    }

    pub fn lattice_basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn lattice_rank(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `lambda` in the lattice basis, if it lies in the lattice.
    pub fn lattice_coords(&self, lambda: &[i64]) -> Option<Vec<i64>> {
        if lambda.len() != self.d {
            return None;
        }
        if self.full_lattice {
            return Some(lambda.to_vec());
        }
        let t: Vec<Q> = lambda.iter().map(|&x| q_int(x)).collect();
        let c = solve_columns(&q_columns(&self.basis), &t)?;
        c.iter().map(|x| if x.is_integer() { lattice_to_i64(x) } else { None }).collect()
    }

    pub fn in_lattice(&self, lambda: &[i64]) -> bool {
        self.lattice_coords(lambda).is_some()
    }

    pub fn from_lattice_coords(&self, c: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.d];
        for (b, &k) in self.basis.iter().zip(c) {
            for (o, x) in out.iter_mut().zip(b) {
                *o += k * x;
            }
        }
        out
    }

    /// `v . x` for the linear Weyl action.
    pub fn act(&self, v: WeylElt, x: &CochVec) -> CochVec {
        x.apply(self.weyl.matrix(v))
    }

    pub fn act_int(&self, v: WeylElt, lambda: &[i64]) -> Vec<i64> {
        self.weyl.act(v, lambda)
    }

    pub fn is_dominant(&self, x: &CochVec) -> bool {
        self.simple_roots.iter().all(|a| !x.pair(a).is_negative())
    }

    /// `(x_dom, v)` with `v . x = x_dom` dominant.
    pub fn dominant_rep(&self, x: &CochVec) -> (CochVec, WeylElt) {
        let mut x = x.clone();
        let mut v = WeylElt::ID;
        'outer: loop {
            for i in 0..self.r {
                let p = x.pair(&self.simple_roots[i]);
                if p.is_negative() {
                    let c: Vec<Q> = self.simple_coroots[i].iter().map(|&a| q_int(a)).collect();
                    for (xi, ci) in x.0.iter_mut().zip(&c) {
                        *xi -= &p * ci;
                    }
                    v = self.weyl.lmul_simple(i, v);
                    continue 'outer;
                }
            }
            return (x, v);
        }
    }

    /// Integral version of [`RootDatum::dominant_rep`].
    pub fn dominant_int(&self, lambda: &[i64]) -> (Vec<i64>, WeylElt) {
        let mut x = lambda.to_vec();
        let mut v = WeylElt::ID;
        'outer: loop {
            for i in 0..self.r {
                let p = dot(&x, &self.simple_roots[i]);
                if p < 0 {
                    for (xi, ci) in x.iter_mut().zip(&self.simple_coroots[i]) {
                        *xi -= p * ci;
                    }
                    v = self.weyl.lmul_simple(i, v);
                    continue 'outer;
                }
            }
            return (x, v);
        }
    }

    /// Writes `x` as a rational combination of the simple coroots indexed by
    /// `j`, or returns `None` if `x` is not in their span.
    pub fn coroot_cone_coeffs(&self, x: &CochVec, j: &[usize]) -> Option<Vec<Q>> {
        let cols: Vec<Vec<Q>> = j
            .iter()
            .map(|&i| self.simple_coroots[i].iter().map(|&a| q_int(a)).collect())
            .collect();
        if cols.is_empty() {
            return if x.is_zero() { Some(Vec::new()) } else { None };
        }
        solve_columns(&cols, &x.0)
    }

    /// All simple indices.
    pub fn all_simple(&self) -> Vec<usize> {
        (0..self.r).collect()
    }

    /// `x - y` is a non-negative rational combination of simple coroots.
    pub fn dominates(&self, x: &CochVec, y: &CochVec) -> bool {
        match self.coroot_cone_coeffs(&x.sub(y), &self.all_simple()) {
            Some(c) => c.iter().all(|a| !a.is_negative()),
            None => false,
        }
    }

    /// Image of an integral cocharacter in `pi_1(G)_Gamma` of this datum.
    pub fn pi1_class(&self, lambda: &[i64]) -> Result<Pi1Element> {
        let c = self
            .lattice_coords(lambda)
            .ok_or_else(|| Error::DimensionMismatch(format!("{lambda:?} is not in the cocharacter lattice")))?;
        Ok(self.pi1.class_of_coords(&c))
    }

    pub fn pi1(&self) -> &Pi1Quotient {
        &self.pi1
    }

    /// Integral cocharacter with the given Kottwitz class.
    pub fn pi1_lift(&self, k: &Pi1Element) -> Vec<i64> {
        let c = self.pi1.lift_coords(k, self.basis.len());
        self.from_lattice_coords(&c)
    }

    /// Presentation of `pi_1(G) = X_* / coroot lattice` (no coinvariants),
    /// which indexes the length-zero subgroup.
    pub fn omega_quotient(&self) -> &Pi1Quotient {
        &self.omega
    }

    pub fn omega_lift(&self, k: &Pi1Element) -> Vec<i64> {
        let c = self.omega.lift_coords(k, self.basis.len());
        self.from_lattice_coords(&c)
    }

    /// Projection onto the orthogonal of the roots along the coroot span.
    pub fn central_projection(&self, x: &CochVec) -> CochVec {
        if self.r == 0 {
            return x.clone();
        }
        let cols: Vec<Vec<Q>> = (0..self.r)
            .map(|j| (0..self.r).map(|i| q_int(self.cartan[i][j])).collect())
            .collect();
        let rhs: Vec<Q> = self.simple_roots.iter().map(|a| x.pair(a)).collect();
        let c = solve_columns(&cols, &rhs).expect("Cartan matrix is invertible");
        let mut out = x.clone();
        for (j, cj) in c.iter().enumerate() {
            for (o, &a) in out.0.iter_mut().zip(&self.simple_coroots[j]) {
                if a != 0 {
                    *o -= cj * Q::from_integer(a.into());
                }
            }
        }
        out
    }

    /// Average over the cyclic group generated by `delta`.
    pub fn delta_average(&self, x: &CochVec) -> CochVec {
        let mut acc = CochVec::zero(self.d);
        let mut cur = x.clone();
        for _ in 0..self.delta_order {
            acc = acc.add(&cur);
            cur = cur.apply(&self.delta_matrix);
        }
        acc.scale(&lattice::q_frac(1, self.delta_order as i64))
    }

    pub fn delta_apply(&self, x: &CochVec) -> CochVec {
        x.apply(&self.delta_matrix)
    }

    pub fn is_delta_stable(&self, j: &[usize]) -> bool {
        j.iter().all(|&i| j.contains(&self.delta_perm[i]))
    }

    /// All delta-stable subsets of the simple indices, by size then
    /// lexicographically.
    pub fn delta_stable_subsets(&self) -> Vec<Vec<usize>> {
        let r = self.r;
        let mut out: Vec<Vec<usize>> = (0u64..(1u64 << r))
            .map(|mask| (0..r).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
            .filter(|j| self.is_delta_stable(j))
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// The standard Levi `M_J` on the same lattice.
    pub fn levi(&self, j: &[usize]) -> Result<Levi> {
        let mut j = j.to_vec();
        j.sort_unstable();
        j.dedup();
        if j.iter().any(|&i| i >= self.r) {
            return Err(Error::InvalidArgument(format!("simple index out of range in {j:?}")));
        }
        if !self.is_delta_stable(&j) {
            return Err(Error::NonStableJ(format!("{:?}", j.iter().map(|i| i + 1).collect::<Vec<_>>())));
        }
        let pos = |i: usize| j.iter().position(|&x| x == i).expect("delta-stable");
        let spec = DatumSpec {
            name: format!("{}/M{:?}", self.name, j.iter().map(|i| i + 1).collect::<Vec<_>>()),
            ambient_rank: self.d,
            simple_roots: j.iter().map(|&i| self.simple_roots[i].clone()).collect(),
            simple_coroots: j.iter().map(|&i| self.simple_coroots[i].clone()).collect(),
            delta_perm: j.iter().map(|&i| pos(self.delta_perm[i])).collect(),
            delta_matrix: self.spec.delta_matrix.clone(),
            lattice_basis: self.spec.lattice_basis.clone(),
        };
        let datum = RootDatum::with_level(spec, Level::Levi(j.clone()))?;
        Ok(Levi { j, datum })
    }
}

fn lattice_to_i64(x: &Q) -> Option<i64> {
    use num_traits::ToPrimitive;
    x.to_integer().to_i64()
}

/// A standard Levi subgroup together with index translation to `G`.
#[derive(Clone, Debug)]
pub struct Levi {
    pub j: Vec<usize>,
    pub datum: RootDatum,
}

impl Levi {
    /// Finite Weyl element of `M_J` viewed in `W`.
    pub fn weyl_to_g(&self, g: &RootDatum, v: WeylElt) -> WeylElt {
        let word: Vec<usize> = self.datum.weyl().word(v).iter().map(|&a| self.j[a as usize]).collect();
        g.weyl().from_word(&word)
    }

    /// Element of `W_J` as an element of the Levi's Weyl group.
    pub fn weyl_from_g(&self, g: &RootDatum, v: WeylElt) -> Option<WeylElt> {
        let word: Option<Vec<usize>> = g
            .weyl()
            .word(v)
            .iter()
            .map(|&a| self.j.iter().position(|&x| x == a as usize))
            .collect();
        Some(self.datum.weyl().from_word(&word?))
    }

    pub fn is_empty(&self) -> bool {
        self.j.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::q_frac;

    #[test]
    fn builtins() {
        let gl2 = RootDatum::gl(2).unwrap();
        assert_eq!(gl2.n_pos(), 1);
        assert_eq!(gl2.pi1().moduli(), &[0]);
        let gl4 = RootDatum::gl(4).unwrap();
        assert_eq!(gl4.n_pos(), 6);
        assert_eq!(gl4.weyl().order(), 24);
        let sl2 = RootDatum::sl(2).unwrap();
        assert!(sl2.pi1().is_trivial());
        assert!(!sl2.in_lattice(&[1, 0]));
        assert!(sl2.in_lattice(&[1, -1]));
        let sp4 = RootDatum::sp(4).unwrap();
        assert_eq!(sp4.n_pos(), 4);
        assert_eq!(sp4.pi1().moduli(), &[] as &[i64]);
    }

    #[test]
    fn act_and_dominant() {
        let gl2 = RootDatum::gl(2).unwrap();
        let s = gl2.weyl().simple(0);
        assert_eq!(gl2.act(s, &CochVec::from_ints(&[1, 0])), CochVec::from_ints(&[0, 1]));
        let (x, v) = gl2.dominant_rep(&CochVec::from_ints(&[0, 1]));
        assert_eq!(x, CochVec::from_ints(&[1, 0]));
        assert_eq!(v, s);
        let h = CochVec(vec![q_frac(1, 2), q_frac(1, 2)]);
        assert_eq!(gl2.dominant_rep(&h), (h.clone(), WeylElt::ID));

        let gl4 = RootDatum::gl(4).unwrap();
        // (14) = s1 s2 s3 s2 s1
        let t14 = gl4.weyl().from_word(&[0, 1, 2, 1, 0]);
        assert_eq!(gl4.act_int(t14, &[1, 0, 1, 0]), vec![0, 0, 1, 1]);
    }

    #[test]
    fn cone_coeffs() {
        let gl2 = RootDatum::gl(2).unwrap();
        assert_eq!(gl2.coroot_cone_coeffs(&CochVec::from_ints(&[1, -1]), &[0]), Some(vec![q_int(1)]));
        let d = CochVec::from_ints(&[1, 0]).sub(&CochVec(vec![q_frac(1, 2), q_frac(1, 2)]));
        assert_eq!(gl2.coroot_cone_coeffs(&d, &[0]), Some(vec![q_frac(1, 2)]));
        assert_eq!(gl2.coroot_cone_coeffs(&CochVec::from_ints(&[1, 1]), &[0]), None);
    }

    #[test]
    fn pi1_values() {
        let gl2 = RootDatum::gl(2).unwrap();
        assert_eq!(gl2.pi1_class(&[1, 0]).unwrap(), Pi1Element(vec![1]));
        let gl4 = RootDatum::gl(4).unwrap();
        assert_eq!(gl4.pi1_class(&[0, 0, 1, 1]).unwrap(), Pi1Element(vec![2]));
        let sl2 = RootDatum::sl(2).unwrap();
        assert_eq!(sl2.pi1_class(&[3, -3]).unwrap(), Pi1Element(vec![]));
        let k = gl4.pi1_class(&[2, -1, 0, 0]).unwrap();
        assert_eq!(gl4.pi1_class(&gl4.pi1_lift(&k)).unwrap(), k);
    }

    #[test]
    fn stable_subsets() {
        let sl2 = RootDatum::sl(2).unwrap();
        assert_eq!(sl2.delta_stable_subsets(), vec![vec![], vec![0]]);
        let gl4 = RootDatum::gl(4).unwrap();
        assert_eq!(gl4.delta_stable_subsets().len(), 8);
        let sl3 = RootDatum::new(DatumSpec::sl(3).with_delta_perm(vec![1, 0]).unwrap()).unwrap();
        assert_eq!(sl3.delta_stable_subsets(), vec![vec![], vec![0, 1]]);
        assert!(matches!(sl3.levi(&[0]), Err(Error::NonStableJ(_))));
    }

    #[test]
    fn flipped_gl_pi1() {
        let gl2 = RootDatum::new(DatumSpec::gl(2).with_delta_perm(vec![0]).unwrap()).unwrap();
        assert!(gl2.delta_is_trivial());
        let gl3 = RootDatum::new(DatumSpec::gl(3).with_delta_perm(vec![1, 0]).unwrap()).unwrap();
        assert_eq!(gl3.delta_order(), 2);
        // coinvariants of Z under -1
        assert_eq!(gl3.pi1().moduli(), &[2]);
    }

    #[test]
    fn rejects_bad_data() {
        let mut s = DatumSpec::gl(3);
        s.simple_coroots[0] = vec![2, -2, 0];
        assert!(RootDatum::new(s).is_err());
        let mut s = DatumSpec::gl(3);
        s.delta_perm = vec![1, 0];
        assert!(RootDatum::new(s).is_err());
        // affine A1 Cartan matrix
        let s = DatumSpec {
            name: "bad".into(),
            ambient_rank: 2,
            simple_roots: vec![vec![1, 0], vec![-2, 1]],
            simple_coroots: vec![vec![2, 0], vec![-1, 1]],
            delta_perm: vec![0, 1],
            delta_matrix: id_rows(2),
            lattice_basis: None,
        };
        assert!(RootDatum::new(s).is_err());
    }

    #[test]
    fn levi_maps() {
        let gl4 = RootDatum::gl(4).unwrap();
        let m = gl4.levi(&[0, 2]).unwrap();
        assert_eq!(m.datum.weyl().order(), 4);
        for v in m.datum.weyl().elements() {
            let g = m.weyl_to_g(&gl4, v);
            assert_eq!(m.weyl_from_g(&gl4, g), Some(v));
            assert_eq!(m.datum.weyl().matrix(v), gl4.weyl().matrix(g));
        }
    }
}
