//! sigma-conjugacy classes through their Newton and Kottwitz points.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::affine::AffineElt;
use crate::error::{Error, Result};
use crate::lattice::{q_frac, q_int, rank_rows, solve_columns, CochVec, Pi1Element, Q};
use crate::root_datum::{Level, Levi, RootDatum};

/// An element of `B(G)` (or `B(M_J)`), with an optional representative in
/// the extended affine Weyl group. Equality and ordering ignore the
/// representative.
#[derive(Clone, Debug)]
pub struct SigmaClass {
    pub nu: CochVec,
    pub kappa: Pi1Element,
    pub level: Level,
    pub rep: Option<AffineElt>,
}

impl SigmaClass {
    fn key(&self) -> (&Level, &CochVec, &Pi1Element) {
        (&self.level, &self.nu, &self.kappa)
    }

    pub fn without_rep(mut self) -> Self {
        self.rep = None;
        self
    }
}

impl PartialEq for SigmaClass {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for SigmaClass {}

impl PartialOrd for SigmaClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SigmaClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl core::hash::Hash for SigmaClass {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

impl fmt::Display for SigmaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[nu={}, kappa={}]", self.nu, self.kappa)
    }
}

impl RootDatum {
    /// Dominant Newton point of `y`, from the first power of `y delta` that
    /// is a pure translation.
    pub fn newton_point(&self, y: &AffineElt) -> CochVec {
        let ord = self.delta_order();
        let mut acc = y.clone();
        let mut next = self.delta_of(y);
        let mut n = 1usize;
        while !(acc.v.is_id() && n.is_multiple_of(ord)) {
            acc = self.mul(&acc, &next);
            next = self.delta_of(&next);
            n += 1;
        }
        let nu = CochVec::from_ints(&acc.lambda).scale(&q_frac(1, n as i64));
        self.dominant_rep(&nu).0
    }

    pub fn class_of(&self, y: &AffineElt) -> SigmaClass {
        SigmaClass {
            nu: self.newton_point(y),
            kappa: self.kappa(y),
            level: self.level().clone(),
            rep: Some(y.clone()),
        }
    }

    /// `b <= b'` in the dominance order.
    pub fn leq(&self, b: &SigmaClass, b2: &SigmaClass) -> bool {
        b.kappa == b2.kappa && self.dominates(&b2.nu, &b.nu)
    }

    pub fn lt(&self, b: &SigmaClass, b2: &SigmaClass) -> bool {
        b != b2 && self.leq(b, b2)
    }

    pub fn is_basic(&self, b: &SigmaClass) -> bool {
        (0..self.rank()).all(|i| b.nu.pair(self.simple_root(i)).is_zero())
    }

    /// The basic class with Kottwitz point `k`.
    pub fn basic_class(&self, k: &Pi1Element) -> SigmaClass {
        let lambda = self.pi1_lift(k);
        let nu = self.delta_average(&self.central_projection(&CochVec::from_ints(&lambda)));
        let rep = self.omega_part(&self.translation(lambda));
        SigmaClass { nu, kappa: self.pi1().normalize(k), level: self.level().clone(), rep: Some(rep) }
    }

    /// Centralizer type of a dominant Newton point.
    pub fn centralizer_type(&self, nu: &CochVec) -> Vec<usize> {
        (0..self.rank()).filter(|&i| nu.pair(self.simple_root(i)).is_zero()).collect()
    }

    /// delta-orbits on the simple indices outside `j`.
    fn orbits_outside(&self, j: &[usize]) -> Vec<Vec<usize>> {
        let mut done = vec![false; self.rank()];
        let mut out = Vec::new();
        for i in 0..self.rank() {
            if done[i] || j.contains(&i) {
                continue;
            }
            let mut orbit = Vec::new();
            let mut k = i;
            while !done[k] {
                done[k] = true;
                orbit.push(k);
                k = self.delta_perm()[k];
            }
            out.push(orbit);
        }
        out
    }

    /// A length-zero element of `M_J`, `J` the centralizer of `nu`, whose
    /// class in `G` is `b`. Returned together with the Levi.
    pub fn straight_rep(&self, b: &SigmaClass) -> Result<(Levi, AffineElt)> {
        let j = self.centralizer_type(&b.nu);
        let levi = self.levi(&j)?;
        let m = &levi.datum;
        let nu_j = |lambda: &CochVec| m.delta_average(&m.central_projection(lambda));
        let lambda0 = self.pi1_lift(&b.kappa);
        let orbits = self.orbits_outside(&j);
        let cols: Vec<Vec<Q>> = orbits
            .iter()
            .map(|o| nu_j(&CochVec::from_ints(self.simple_coroot(o[0]))).0)
            .collect();
        let target = b.nu.sub(&nu_j(&CochVec::from_ints(&lambda0)));
        let sol = if cols.is_empty() {
            if target.is_zero() {
                Some(Vec::new())
            } else {
                None
            }
        } else {
            solve_columns(&cols, &target.0)
        };
        let sol = sol.ok_or_else(|| Error::NoRepresentative(format!("{b}")))?;
        let mut lambda = lambda0;
        for (o, c) in orbits.iter().zip(&sol) {
            if !c.is_integer() {
                return Err(Error::NoRepresentative(format!("{b}")));
            }
            let n = c.to_integer().to_i64().ok_or_else(|| Error::NoRepresentative(format!("{b}")))?;
            for (a, x) in lambda.iter_mut().zip(self.simple_coroot(o[0])) {
                *a += n * x;
            }
        }
        let tau = m.omega_part(&m.translation(lambda));
        Ok((levi, tau))
    }

    /// Dimension of the fixed space of `matrix` on `X_* ⊗ Q`.
    pub fn fixed_dim(&self, matrix: &[i64]) -> usize {
        let d = self.ambient_rank();
        let cols: Vec<Vec<i64>> = self
            .lattice_basis()
            .iter()
            .map(|b| {
                let mb = crate::lattice::mat_vec(matrix, b);
                mb.iter().zip(b).map(|(x, y)| x - y).collect()
            })
            .collect();
        debug_assert!(cols.iter().all(|c| c.len() == d));
        self.lattice_rank() - rank_rows(&cols)
    }

    /// `rk_F G - rk_F J_b`, read off the straight representative.
    pub fn defect(&self, b: &SigmaClass) -> Result<usize> {
        let (levi, tau) = self.straight_rep(b)?;
        let d = self.ambient_rank();
        let tw = crate::lattice::mat_mul(levi.datum.weyl().matrix(tau.v), self.delta_matrix(), d);
        let rk_g = self.fixed_dim(self.delta_matrix());
        let rk_j = self.fixed_dim(&tw);
        Ok(rk_g - rk_j)
    }

    /// Image in `B(G)` of a class of the Levi `levi`.
    pub fn levi_transfer(&self, levi: &Levi, b: &SigmaClass) -> SigmaClass {
        let nu = self.dominant_rep(&b.nu).0;
        let lambda = levi.datum.pi1_lift(&b.kappa);
        let kappa = self.pi1_class(&lambda).expect("lift lies in the lattice");
        let rep = b.rep.as_ref().map(|x| AffineElt::new(x.lambda.clone(), levi.weyl_to_g(self, x.v)));
        SigmaClass { nu, kappa, level: Level::G, rep }
    }

    /// All classes with Kottwitz point `kappa` whose Newton point lies
    /// below `nu_max`.
    pub fn enumerate_segment(&self, kappa: &Pi1Element, nu_max: &CochVec) -> Result<Vec<SigmaClass>> {
        let basic = self.basic_class(kappa);
        let all = self.all_simple();
        let Some(cmax) = self.coroot_cone_coeffs(&nu_max.sub(&basic.nu), &all) else {
            return Ok(Vec::new());
        };
        if cmax.iter().any(Signed::is_negative) {
            return Ok(Vec::new());
        }
        let lambda0 = self.pi1_lift(kappa);
        let mut found: BTreeSet<SigmaClass> = BTreeSet::new();
        for j in self.delta_stable_subsets() {
            let levi = self.levi(&j)?;
            let m = &levi.datum;
            let nu_j = |lambda: &CochVec| m.delta_average(&m.central_projection(lambda));
            let orbits = self.orbits_outside(&j);
            let base = nu_j(&CochVec::from_ints(&lambda0));
            let cols: Vec<CochVec> =
                orbits.iter().map(|o| nu_j(&CochVec::from_ints(self.simple_coroot(o[0])))).collect();
            let c0 = self
                .coroot_cone_coeffs(&base.sub(&basic.nu), &all)
                .expect("same Kottwitz point");
            // n_O / |O| + c0_i lies in [0, cmax_i] for i in O
            let mut ranges = Vec::new();
            for o in &orbits {
                let size = q_int(o.len() as i64);
                let mut lo: Option<Q> = None;
                let mut hi: Option<Q> = None;
                for &i in o {
                    let l = -&c0[i] * &size;
                    let h = (&cmax[i] - &c0[i]) * &size;
                    lo = Some(match lo {
                        Some(x) if x > l => x,
                        _ => l,
                    });
                    hi = Some(match hi {
                        Some(x) if x < h => x,
                        _ => h,
                    });
                }
                let lo = lo.expect("orbit non-empty").ceil().to_integer();
                let hi = hi.expect("orbit non-empty").floor().to_integer();
                if lo > hi {
                    ranges.clear();
                    ranges.push(None);
                    break;
                }
                ranges.push(Some((
                    lo.to_i64().ok_or_else(|| Error::InvalidArgument("range too large".into()))?,
                    hi.to_i64().ok_or_else(|| Error::InvalidArgument("range too large".into()))?,
                )));
            }
            if ranges.iter().any(Option::is_none) {
                continue;
            }
            let ranges: Vec<(i64, i64)> = ranges.into_iter().map(Option::unwrap).collect();
            let mut n: Vec<i64> = ranges.iter().map(|r| r.0).collect();
            loop {
                let mut nu = base.clone();
                for (c, &k) in cols.iter().zip(&n) {
                    nu = nu.add(&c.scale(&q_int(k)));
                }
                let strict = (0..self.rank())
                    .all(|i| j.contains(&i) || nu.pair(self.simple_root(i)).is_positive());
                if strict && self.is_dominant(&nu) && self.dominates(nu_max, &nu) {
                    let mut lambda = lambda0.clone();
                    for (o, &k) in orbits.iter().zip(&n) {
                        for (a, x) in lambda.iter_mut().zip(self.simple_coroot(o[0])) {
                            *a += k * x;
                        }
                    }
                    let tau = m.omega_part(&m.translation(lambda));
                    let rep = AffineElt::new(tau.lambda, levi.weyl_to_g(self, tau.v));
                    found.insert(SigmaClass {
                        nu,
                        kappa: self.pi1().normalize(kappa),
                        level: self.level().clone(),
                        rep: Some(rep),
                    });
                }
                // odometer
                let mut pos = 0;
                loop {
                    if pos == n.len() {
                        break;
                    }
                    if n[pos] < ranges[pos].1 {
                        n[pos] += 1;
                        break;
                    }
                    n[pos] = ranges[pos].0;
                    pos += 1;
                }
                if pos == n.len() {
                    break;
                }
            }
        }
        Ok(found.into_iter().collect())
    }

    /// `<2 rho, nu>`, which is an integer for Newton points of classes.
    pub fn two_rho_pairing(&self, nu: &CochVec) -> Q {
        nu.pair(self.two_rho())
    }
}
