//! `(J, w, delta)`-alcove elements and the minimal Newton stratum.

use alloc::vec::Vec;

use crate::affine::AffineElt;
use crate::error::{Error, Result};
use crate::lattice::{q_frac, Q};
use crate::root_datum::{Levi, RootDatum};
use crate::sigma::SigmaClass;
use crate::weyl::WeylElt;

/// Witness that `x` is a `(J, w, delta)`-alcove element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlcoveCertificate {
    pub j: Vec<usize>,
    pub w: WeylElt,
    pub normalized: bool,
    /// `w^{-1} x delta(w)`, an element of the Iwahori-Weyl group of `M_J`.
    pub tilde_x: AffineElt,
}

impl Levi {
    /// An element of `W~` with finite part in `W_J`, as an element of the
    /// Levi's own group.
    pub fn elt_from_g(&self, g: &RootDatum, x: &AffineElt) -> Option<AffineElt> {
        Some(AffineElt::new(x.lambda.clone(), self.weyl_from_g(g, x.v)?))
    }

    pub fn elt_to_g(&self, g: &RootDatum, x: &AffineElt) -> AffineElt {
        AffineElt::new(x.lambda.clone(), self.weyl_to_g(g, x.v))
    }
}

impl RootDatum {
    /// `true` if the support of positive root `k` lies in `j`.
    pub fn root_in_levi(&self, k: usize, j: &[usize]) -> bool {
        self.root_coeffs(k).iter().enumerate().all(|(i, &c)| c == 0 || j.contains(&i))
    }

    fn tilde(&self, x: &AffineElt, w: WeylElt) -> AffineElt {
        let wf = self.finite(w);
        self.mul(&self.mul(&self.inv(&wf), x), &self.delta_of(&wf))
    }

    pub fn is_alcove_element(&self, x: &AffineElt, j: &[usize], w: WeylElt) -> Result<bool> {
        if !self.is_delta_stable(j) {
            return Err(Error::NonStableJ(alloc::format!(
                "{:?}",
                j.iter().map(|i| i + 1).collect::<Vec<_>>()
            )));
        }
        Ok(self.alcove_check(x, j, w))
    }

    fn alcove_check(&self, x: &AffineElt, j: &[usize], w: WeylElt) -> bool {
        let t = self.tilde(x, w);
        if !self.weyl().in_parabolic(t.v, j) {
            return false;
        }
        (0..self.n_pos()).filter(|&k| !self.root_in_levi(k, j)).all(|k| {
            let a = self.weyl().root_image(w, k);
            self.offset(x, a) >= self.base_offset(a)
        })
    }

    pub fn normalize(&self, x: &AffineElt, j: &[usize], w: WeylElt) -> Result<AlcoveCertificate> {
        if !self.is_alcove_element(x, j, w)? {
            return Err(Error::NotAnAlcove);
        }
        let w2 = self.weyl().min_right_coset(w, j);
        Ok(AlcoveCertificate { j: j.to_vec(), w: w2, normalized: true, tilde_x: self.tilde(x, w2) })
    }

    /// Minimal-length representatives of `W / W_J`.
    pub fn min_coset_reps(&self, j: &[usize]) -> Vec<WeylElt> {
        let w = self.weyl();
        w.elements()
            .filter(|&v| j.iter().all(|&i| w.root_is_positive(w.root_image(v, i))))
            .collect()
    }

    fn certificates_for(&self, x: &AffineElt, j: &[usize]) -> Vec<AlcoveCertificate> {
        self.min_coset_reps(j)
            .into_iter()
            .filter(|&w| self.alcove_check(x, j, w))
            .map(|w| AlcoveCertificate { j: j.to_vec(), w, normalized: true, tilde_x: self.tilde(x, w) })
            .collect()
    }

    /// First normalized certificate with `J` of smallest size
    /// (lexicographic among equal sizes).
    pub fn find_minimal_pair(&self, x: &AffineElt) -> AlcoveCertificate {
        for j in self.delta_stable_subsets() {
            if let Some(c) = self.certificates_for(x, &j).into_iter().next() {
                return c;
            }
        }
        unreachable!("J = S, w = 1 is always a certificate")
    }

    /// Every normalized certificate whose `J` is inclusion-minimal among the
    /// delta-stable subsets admitting one.
    pub fn all_minimal_pairs(&self, x: &AffineElt) -> Vec<AlcoveCertificate> {
        let subsets = self.delta_stable_subsets();
        let mut admissible: Vec<Vec<usize>> = Vec::new();
        let mut out = Vec::new();
        for j in subsets {
            let certs = self.certificates_for(x, &j);
            if certs.is_empty() {
                continue;
            }
            let minimal = !admissible.iter().any(|a| a.iter().all(|i| j.contains(i)));
            admissible.push(j);
            if minimal {
                out.extend(certs);
            }
        }
        out
    }

    /// The unique minimal class of `B(G)_x` through a minimal alcove pair.
    pub fn minimal_newton(&self, x: &AffineElt) -> Result<SigmaClass> {
        let cert = self.find_minimal_pair(x);
        self.minimal_newton_from(&cert)
    }

    pub fn minimal_newton_from(&self, cert: &AlcoveCertificate) -> Result<SigmaClass> {
        let levi = self.levi(&cert.j)?;
        let k = levi.datum.kappa(&cert.tilde_x);
        let b0 = levi.datum.basic_class(&k);
        Ok(self.levi_transfer(&levi, &b0))
    }

    /// `[m_x]` is the basic class of its Kottwitz point.
    pub fn basic_nonempty(&self, x: &AffineElt) -> Result<bool> {
        let m = self.minimal_newton(x)?;
        Ok(self.is_basic(&m))
    }

    /// `1/2 (l(x) + l(eta(x)) - def b) - <rho, nu_b>`
    pub fn virtual_dimension(&self, x: &AffineElt, b: &SigmaClass) -> Result<Q> {
        let l = self.length(x) as i64;
        let le = self.weyl().length(self.eta(x)) as i64;
        let def = self.defect(b)? as i64;
        let rho = self.two_rho_pairing(&b.nu) * q_frac(1, 2);
        Ok(q_frac(l + le - def, 2) - rho)
    }

    /// `<2 rho, nu>` as an integer; panics on a non-integral value, which
    /// never happens for Newton points.
    pub fn two_rho_int(&self, b: &SigmaClass) -> i64 {
        let v = self.two_rho_pairing(&b.nu);
        assert!(v.is_integer(), "<2rho, nu> = {v} is not integral");
        use num_traits::ToPrimitive;
        v.to_integer().to_i64().expect("fits")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{q_int, CochVec, Pi1Element};

    #[test]
    fn alcove_examples() {
        let gl2 = RootDatum::gl(2).unwrap();
        let s = gl2.weyl().simple(0);
        assert!(gl2.is_alcove_element(&gl2.translation(vec![2, 0]), &[], s).unwrap());
        assert!(!gl2.is_alcove_element(&gl2.translation(vec![2, 0]), &[], WeylElt::ID).unwrap());

        let gl4 = RootDatum::gl(4).unwrap();
        let w = gl4.weyl();
        let v = w.mul(w.from_word(&[1, 2, 1]), w.from_word(&[0, 1, 0])); // (24)(13)
        let x = AffineElt::new(vec![0, 0, 1, 1], v);
        let w14 = w.from_word(&[0, 1, 2, 1, 0]);
        assert!(gl4.is_alcove_element(&x, &[0, 2], w14).unwrap());
        let c = gl4.normalize(&x, &[0, 2], w14).unwrap();
        assert_eq!(w.length(c.w), 3);
        assert!(gl4.is_alcove_element(&x, &[0, 2], c.w).unwrap());

        let sl2 = RootDatum::sl(2).unwrap();
        let s = sl2.weyl().simple(0);
        let y = AffineElt::new(vec![-2, 2], s);
        assert!(!sl2.is_alcove_element(&y, &[], WeylElt::ID).unwrap());
        assert!(!sl2.is_alcove_element(&y, &[], s).unwrap());
    }

    #[test]
    fn normalize_trivial_cases() {
        let gl2 = RootDatum::gl(2).unwrap();
        let s = gl2.weyl().simple(0);
        let x = AffineElt::new(vec![1, 0], s);
        assert_eq!(gl2.normalize(&x, &[0], s).unwrap().w, WeylElt::ID);
        let t = gl2.translation(vec![2, 0]);
        assert_eq!(gl2.normalize(&t, &[], s).unwrap().w, s);
        assert_eq!(gl2.normalize(&t, &[], WeylElt::ID), Err(Error::NotAnAlcove));
    }

    #[test]
    fn minimal_pairs() {
        let gl2 = RootDatum::gl(2).unwrap();
        let s = gl2.weyl().simple(0);
        let c = gl2.find_minimal_pair(&gl2.identity());
        assert_eq!((c.j.clone(), c.w), (vec![], WeylElt::ID));
        let c = gl2.find_minimal_pair(&gl2.translation(vec![2, 0]));
        assert_eq!((c.j.clone(), c.w), (vec![], s));
        let sl2 = RootDatum::sl(2).unwrap();
        let c = sl2.find_minimal_pair(&AffineElt::new(vec![-2, 2], sl2.weyl().simple(0)));
        assert_eq!((c.j.clone(), c.w), (vec![0], WeylElt::ID));
    }

    #[test]
    fn minimal_newton_examples() {
        let sl2 = RootDatum::sl(2).unwrap();
        let y = AffineElt::new(vec![-2, 2], sl2.weyl().simple(0));
        assert!(sl2.minimal_newton(&y).unwrap().nu.is_zero());
        assert!(sl2.basic_nonempty(&y).unwrap());
        let gl2 = RootDatum::gl(2).unwrap();
        let m = gl2.minimal_newton(&gl2.translation(vec![2, 0])).unwrap();
        assert_eq!((m.nu, m.kappa), (CochVec::from_ints(&[2, 0]), Pi1Element(vec![2])));
        assert!(!gl2.basic_nonempty(&gl2.translation(vec![2, 0])).unwrap());
    }

    #[test]
    fn virtual_dimensions() {
        let sl2 = RootDatum::sl(2).unwrap();
        let y = AffineElt::new(vec![-2, 2], sl2.weyl().simple(0));
        let one = sl2.class_of(&sl2.identity());
        assert_eq!(sl2.virtual_dimension(&y, &one).unwrap(), q_int(2));
        let b = sl2.class_of(&sl2.translation(vec![1, -1]));
        assert_eq!(sl2.virtual_dimension(&y, &b).unwrap(), q_int(1));
        let gl2 = RootDatum::gl(2).unwrap();
        let x = AffineElt::new(vec![1, 0], gl2.weyl().simple(0));
        assert_eq!(gl2.virtual_dimension(&x, &gl2.class_of(&x)).unwrap(), q_int(1));
    }
}
