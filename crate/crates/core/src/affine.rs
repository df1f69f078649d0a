//! The extended affine Weyl group `X_* ⋊ W`.
//!
//! Offsets: `off(1, a) = 1` for `a > 0` and `0` for `a < 0`, and
//! `off(t^lambda v, a) = off(1, v^{-1} a) - <a, lambda>`. Length is the sum of
//! the positive parts of `off(x, a) - off(1, a)` over all roots.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{Error, Result};
use crate::lattice::{dot, Pi1Element};
use crate::root_datum::RootDatum;
use crate::weyl::WeylElt;

/// `t^lambda v`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct AffineElt {
    pub lambda: Vec<i64>,
    pub v: WeylElt,
}

impl AffineElt {
    pub fn new(lambda: Vec<i64>, v: WeylElt) -> Self {
        AffineElt { lambda, v }
    }

    pub fn is_translation(&self) -> bool {
        self.v.is_id()
    }
}

/// `off(x, a)` for every root index `a`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlcoveOffsets(pub Vec<i64>);

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ShrunkenStatus {
    NotShrunken,
    Shrunken,
    RegularShrunken,
}

impl ShrunkenStatus {
    pub fn is_shrunken(self) -> bool {
        self != ShrunkenStatus::NotShrunken
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ShrunkenStatus::NotShrunken => "not_shrunken",
            ShrunkenStatus::Shrunken => "shrunken",
            ShrunkenStatus::RegularShrunken => "regular_shrunken",
        }
    }
}

/// Outcome of the search for shorter elements by cyclic shifts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CyclicShift {
    pub minimal: bool,
    /// A strictly shorter element in the same class, when not minimal.
    pub witness: Option<AffineElt>,
}

/// Length-preserving part of a cyclic-shift orbit, plus the first strict
/// descent found from it.
#[derive(Clone, Debug)]
pub struct ShiftOrbit {
    pub members: Vec<AffineElt>,
    /// `(y, s)` with `l(s y delta(s)) = l(y) - 2`.
    pub descent: Option<(AffineElt, usize)>,
}

impl RootDatum {
    pub(crate) fn compute_affine_generators(&self) -> Vec<AffineElt> {
        let d = self.ambient_rank();
        let w = self.weyl();
        let mut gens: Vec<AffineElt> =
            (0..self.rank()).map(|i| AffineElt::new(vec![0; d], w.simple(i))).collect();
        for &theta in self.highest_roots() {
            let tc = self.coroot(theta).to_vec();
            // s_theta from the images of the simple roots
            let images: Vec<u32> = (0..self.rank())
                .map(|i| {
                    let p = dot(self.simple_root(i), &tc);
                    let mut c = self.root_coeffs(i).to_vec();
                    for (a, b) in c.iter_mut().zip(self.root_coeffs(theta)) {
                        *a -= p * b;
                    }
                    self.root_index(&c).expect("reflection permutes roots") as u32
                })
                .collect();
            let s_theta = w.from_simple_images(&images).expect("reflection lies in W");
            gens.push(AffineElt::new(tc.iter().map(|x| -x).collect(), s_theta));
        }
        gens
    }

    pub fn identity(&self) -> AffineElt {
        AffineElt::new(vec![0; self.ambient_rank()], WeylElt::ID)
    }

    pub fn translation(&self, lambda: Vec<i64>) -> AffineElt {
        AffineElt::new(lambda, WeylElt::ID)
    }

    pub fn finite(&self, v: WeylElt) -> AffineElt {
        AffineElt::new(vec![0; self.ambient_rank()], v)
    }

    /// Checks that `lambda` has the right length and lies in the lattice.
    pub fn check_elt(&self, x: &AffineElt) -> Result<()> {
        if x.lambda.len() != self.ambient_rank() {
            return Err(Error::DimensionMismatch(format!(
                "translation has {} entries, expected {}",
                x.lambda.len(),
                self.ambient_rank()
            )));
        }
        if !self.in_lattice(&x.lambda) {
            return Err(Error::DimensionMismatch(format!(
                "{:?} is not in the cocharacter lattice of {}",
                x.lambda,
                self.name()
            )));
        }
        Ok(())
    }

    /// `(t^l v)(t^m u) = t^{l + v m} (v u)`
    pub fn mul(&self, x: &AffineElt, y: &AffineElt) -> AffineElt {
        let vm = self.act_int(x.v, &y.lambda);
        AffineElt::new(
            x.lambda.iter().zip(&vm).map(|(a, b)| a + b).collect(),
            self.weyl().mul(x.v, y.v),
        )
    }

    pub fn inv(&self, x: &AffineElt) -> AffineElt {
        let vi = self.weyl().inv(x.v);
        let l = self.act_int(vi, &x.lambda);
        AffineElt::new(l.iter().map(|a| -a).collect(), vi)
    }

    pub fn delta_of(&self, x: &AffineElt) -> AffineElt {
        AffineElt::new(self.delta_cochar(&x.lambda), self.weyl().delta(x.v))
    }

    pub fn delta_inv_of(&self, x: &AffineElt) -> AffineElt {
        AffineElt::new(self.delta_inv_cochar(&x.lambda), self.weyl().delta_inv(x.v))
    }

    /// `g x delta(g)^{-1}`
    pub fn delta_conj(&self, g: &AffineElt, x: &AffineElt) -> AffineElt {
        let dg = self.delta_of(g);
        self.mul(&self.mul(g, x), &self.inv(&dg))
    }

    pub fn pow(&self, x: &AffineElt, n: i64) -> AffineElt {
        let base = if n < 0 { self.inv(x) } else { x.clone() };
        let mut acc = self.identity();
        for _ in 0..n.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        acc
    }

    /// `off(x, root k)`.
    pub fn offset(&self, x: &AffineElt, k: usize) -> i64 {
        let vi = self.weyl().inv(x.v);
        let pos = self.weyl().root_is_positive(self.weyl().root_image(vi, k)) as i64;
        pos - dot(self.root(k), &x.lambda)
    }

    pub fn alcove_offset(&self, x: &AffineElt) -> AlcoveOffsets {
        let vi = self.weyl().inv(x.v);
        AlcoveOffsets(
            (0..self.n_roots())
                .map(|k| {
                    let pos = self.weyl().root_is_positive(self.weyl().root_image(vi, k)) as i64;
                    pos - dot(self.root(k), &x.lambda)
                })
                .collect(),
        )
    }

    pub fn base_offset(&self, k: usize) -> i64 {
        (k < self.n_pos()) as i64
    }

    pub fn length(&self, x: &AffineElt) -> usize {
        let w = self.weyl();
        let vi = w.inv(x.v);
        let mut l = 0i64;
        for k in 0..self.n_pos() {
            let neg = !w.root_is_positive(w.root_image(vi, k)) as i64;
            l += (dot(self.root(k), &x.lambda) + neg).abs();
        }
        l as usize
    }

    /// `x = g_{a_1} ... g_{a_k} tau` with `tau` of length zero. Indices refer
    /// to [`RootDatum::affine_generators`].
    pub fn reduced_word(&self, x: &AffineElt) -> (Vec<usize>, AffineElt) {
        let mut word = Vec::new();
        let mut cur = x.clone();
        let mut l = self.length(&cur);
        'outer: while l > 0 {
            for (i, g) in self.affine_generators().iter().enumerate() {
                let y = self.mul(g, &cur);
                let ly = self.length(&y);
                if ly < l {
                    word.push(i);
                    cur = y;
                    l = ly;
                    continue 'outer;
                }
            }
            unreachable!("every element of positive length has a left descent");
        }
        (word, cur)
    }

    /// The length-zero element `tau` with `x` in `W_a tau`.
    pub fn omega_part(&self, x: &AffineElt) -> AffineElt {
        self.reduced_word(x).1
    }

    /// `eta(x) = delta^{-1}(w) v` for `x = v t^mu w` where `t^mu w` maps the
    /// base alcove into the dominant chamber. With the base alcove on the
    /// antidominant side this means `mu` dominant and `w` longest in `W_mu w`.
    pub fn eta(&self, x: &AffineElt) -> WeylElt {
        let w = self.weyl();
        let (mu, v1) = self.dominant_int(&x.lambda);
        let stab: Vec<usize> =
            (0..self.rank()).filter(|&i| dot(self.simple_root(i), &mu) == 0).collect();
        let wp = w.mul(v1, x.v);
        let wmax = w.max_left_coset(&stab, wp);
        let v = w.mul(x.v, w.inv(wmax));
        w.mul(w.delta_inv(wmax), v)
    }

    /// The dominant translation part `mu` of `x = v t^mu w`.
    pub fn dominant_translation(&self, x: &AffineElt) -> Vec<i64> {
        self.dominant_int(&x.lambda).0
    }

    pub fn shrunken_status(&self, x: &AffineElt) -> ShrunkenStatus {
        let w = self.weyl();
        let vi = w.inv(x.v);
        for k in 0..self.n_pos() {
            let neg = !w.root_is_positive(w.root_image(vi, k)) as i64;
            if dot(self.root(k), &x.lambda) + neg == 0 {
                return ShrunkenStatus::NotShrunken;
            }
        }
        let mu = self.dominant_translation(x);
        if (0..self.rank()).all(|i| dot(self.simple_root(i), &mu) > 0) {
            ShrunkenStatus::RegularShrunken
        } else {
            ShrunkenStatus::Shrunken
        }
    }

    pub fn bruhat_leq(&self, x: &AffineElt, y: &AffineElt) -> bool {
        let mut x = x.clone();
        let mut y = y.clone();
        loop {
            let lx = self.length(&x);
            let ly = self.length(&y);
            if lx > ly {
                return false;
            }
            if ly == 0 {
                return x == y;
            }
            let (s, sy) = self
                .affine_generators()
                .iter()
                .find_map(|g| {
                    let sy = self.mul(g, &y);
                    (self.length(&sy) < ly).then_some((g, sy))
                })
                .expect("left descent exists");
            let sx = self.mul(s, &x);
            if self.length(&sx) < lx {
                x = sx;
            }
            y = sy;
        }
    }

    pub fn kappa(&self, x: &AffineElt) -> Pi1Element {
        self.pi1_class(&x.lambda).expect("translation part lies in the lattice")
    }

    /// Breadth-first search of the cyclic-shift class of `x` through moves
    /// `y -> s y delta(s)` that keep the length, stopping at the first move
    /// that lowers it.
    pub fn shift_orbit(&self, x: &AffineElt, budget: u64) -> Result<ShiftOrbit> {
        self.shift_orbit_ordered(x, budget, None)
    }

    /// As [`RootDatum::shift_orbit`], trying generators in the given order.
    pub fn shift_orbit_ordered(
        &self,
        x: &AffineElt,
        budget: u64,
        order: Option<&[usize]>,
    ) -> Result<ShiftOrbit> {
        let gens = self.affine_generators();
        let dgens: Vec<AffineElt> = gens.iter().map(|g| self.delta_of(g)).collect();
        let default: Vec<usize> = (0..gens.len()).collect();
        let order = order.unwrap_or(&default);
        let l = self.length(x);
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        let mut members = Vec::new();
        seen.insert(x.clone());
        queue.push_back(x.clone());
        while let Some(y) = queue.pop_front() {
            members.push(y.clone());
            if members.len() as u64 > budget {
                return Err(Error::SearchBudgetExceeded(budget));
            }
            for &i in order {
                let z = self.mul(&self.mul(&gens[i], &y), &dgens[i]);
                let lz = self.length(&z);
                if lz < l {
                    return Ok(ShiftOrbit { members, descent: Some((y, i)) });
                }
                if lz == l && seen.insert(z.clone()) {
                    queue.push_back(z);
                }
            }
        }
        Ok(ShiftOrbit { members, descent: None })
    }

    pub fn min_length_in_class(&self, x: &AffineElt, budget: u64) -> Result<CyclicShift> {
        let orbit = self.shift_orbit(x, budget)?;
        Ok(match orbit.descent {
            None => CyclicShift { minimal: true, witness: None },
            Some((y, i)) => {
                let g = &self.affine_generators()[i];
                let z = self.mul(&self.mul(g, &y), &self.delta_of(g));
                CyclicShift { minimal: false, witness: Some(z) }
            }
        })
    }

    /// Name of affine generator `i`: `s1..sr`, then `s0` (or `s0_c` for the
    /// `c`-th component when the datum is reducible).
    pub fn generator_name(&self, i: usize) -> String {
        let r = self.rank();
        if i < r {
            format!("s{}", i + 1)
        } else if self.is_irreducible() {
            String::from("s0")
        } else {
            format!("s0_{}", i - r + 1)
        }
    }

    /// Canonical text form `t[l_1,...,l_d]*s_i*...` with the reduced word of
    /// the finite part.
    pub fn format_elt(&self, x: &AffineElt) -> String {
        let mut s = String::from("t[");
        for (i, a) in x.lambda.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            let _ = write!(s, "{a}");
        }
        s.push(']');
        for &a in self.weyl().word(x.v) {
            let _ = write!(s, "*s{}", a + 1);
        }
        s
    }

    /// Finite Weyl element as a word `s1*s2`, or `1`.
    pub fn format_weyl(&self, v: WeylElt) -> String {
        let word = self.weyl().word(v);
        if word.is_empty() {
            return String::from("1");
        }
        let parts: Vec<String> = word.iter().map(|a| format!("s{}", a + 1)).collect();
        parts.join("*")
    }

    /// All elements of `W_a` of length at most `max_len`, by length.
    pub fn affine_weyl_ball(&self, max_len: usize, budget: u64) -> Result<Vec<AffineElt>> {
        let mut layers: Vec<Vec<AffineElt>> = vec![vec![self.identity()]];
        let mut seen: BTreeSet<AffineElt> = BTreeSet::new();
        seen.insert(self.identity());
        for l in 1..=max_len {
            let mut next = Vec::new();
            for x in &layers[l - 1] {
                for g in self.affine_generators() {
                    let y = self.mul(g, x);
                    if self.length(&y) == l && seen.insert(y.clone()) {
                        next.push(y);
                        if seen.len() as u64 > budget {
                            return Err(Error::SearchBudgetExceeded(budget));
                        }
                    }
                }
            }
            next.sort();
            layers.push(next);
        }
        Ok(layers.into_iter().flatten().collect())
    }

    /// Length-zero elements, one for each class of `pi_1(G)` whose free
    /// coordinates lie in `0..free_range`.
    pub fn omega_reps(&self, free_range: i64) -> Vec<AffineElt> {
        let q = self.omega_quotient();
        let mut classes: Vec<Vec<i64>> = vec![Vec::new()];
        for &m in q.moduli() {
            let range = if m == 0 { free_range.max(1) } else { m };
            let mut next = Vec::new();
            for c in &classes {
                for k in 0..range {
                    let mut c2 = c.clone();
                    c2.push(k);
                    next.push(c2);
                }
            }
            classes = next;
        }
        let mut out: BTreeMap<Vec<i64>, AffineElt> = BTreeMap::new();
        for c in classes {
            let lambda = self.omega_lift(&Pi1Element(c.clone()));
            let tau = self.omega_part(&self.translation(lambda));
            out.insert(c, tau);
        }
        out.into_values().collect()
    }
}
