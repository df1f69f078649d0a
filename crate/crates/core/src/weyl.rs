//! Finite Weyl group as a precomputed table.
//!
//! Elements are indices into the table. Each entry keeps the permutation it
//! induces on the root list, its matrix on cocharacters and one reduced word
//! (the breadth-first one, so words are shortlex-ish but not canonical in any
//! stronger sense).

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::mat_vec;

/// Hard cap on the order of the finite Weyl group.
pub const MAX_WEYL_ORDER: usize = 60_000;

/// Above this order no full multiplication table is stored.
const FULL_TABLE_MAX: usize = 512;

/// Index of an element of the finite Weyl group of a fixed datum.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct WeylElt(pub u32);

impl WeylElt {
    pub const ID: WeylElt = WeylElt(0);

    pub fn is_id(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Debug)]
pub struct WeylGroup {
    rank: usize,
    dim: usize,
    n_roots: usize,
    n_pos: usize,
    perms: Vec<u32>,
    mats: Vec<i64>,
    words: Vec<Vec<u8>>,
    lmul: Vec<u32>,
    rmul: Vec<u32>,
    inv: Vec<u32>,
    delta: Vec<u32>,
    index: BTreeMap<Vec<u32>, u32>,
    table: Option<Vec<u32>>,
}

impl WeylGroup {
    /// `reflections[i]` is the permutation of the root list induced by the
    /// i-th simple reflection and `matrices[i]` its `d x d` matrix. Roots
    /// `0..n_pos` are positive and the first `rank` of them are simple.
    pub fn build(
        reflections: &[Vec<u32>],
        matrices: &[Vec<i64>],
        n_pos: usize,
        dim: usize,
        delta_perm: &[usize],
    ) -> Result<Self> {
        let rank = reflections.len();
        let n_roots = 2 * n_pos;
        let key_of = |perm: &[u32]| -> Vec<u32> { perm[..rank].to_vec() };

        let mut perms: Vec<u32> = (0..n_roots as u32).collect();
        let mut mats = crate::lattice::identity(dim);
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        let mut index = BTreeMap::new();
        index.insert(key_of(&perms), 0u32);
        let mut lmul: Vec<u32> = Vec::new();

        let mut head = 0usize;
        while head < words.len() {
            let cur_perm: Vec<u32> = perms[head * n_roots..(head + 1) * n_roots].to_vec();
            let cur_mat: Vec<i64> = mats[head * dim * dim..(head + 1) * dim * dim].to_vec();
            for i in 0..rank {
                let refl = &reflections[i];
                let new_perm: Vec<u32> = cur_perm.iter().map(|&k| refl[k as usize]).collect();
                let key = key_of(&new_perm);
                let idx = match index.get(&key) {
                    Some(&j) => j,
                    None => {
                        let j = words.len() as u32;
                        if words.len() >= MAX_WEYL_ORDER {
                            return Err(Error::InvalidDatum(alloc::format!(
                                "finite Weyl group larger than {MAX_WEYL_ORDER}"
                            )));
                        }
                        index.insert(key, j);
                        perms.extend_from_slice(&new_perm);
                        mats.extend(crate::lattice::mat_mul(&matrices[i], &cur_mat, dim));
                        let mut w = vec![i as u8];
                        w.extend_from_slice(&words[head]);
                        words.push(w);
                        j
                    }
                };
                lmul.push(idx);
            }
            head += 1;
        }
        let order = words.len();

        let mut g = WeylGroup {
            rank,
            dim,
            n_roots,
            n_pos,
            perms,
            mats,
            words,
            lmul,
            rmul: Vec::new(),
            inv: Vec::new(),
            delta: Vec::new(),
            index,
            table: None,
        };

        let mut rmul = vec![0u32; order * rank];
        let mut inv = vec![0u32; order];
        let mut delta = vec![0u32; order];
        for v in 0..order {
            let word = g.words[v].clone();
            for i in 0..rank {
                // v * s_i = s_{w1} ... s_{wk} s_i
                rmul[v * rank + i] = g.apply_word(&word, g.simple(i)).0;
            }
            let mut x = WeylElt::ID;
            for &a in &word {
                x = g.lmul_simple(a as usize, x);
            }
            inv[v] = x.0;
            let mut y = WeylElt::ID;
            for &a in word.iter().rev() {
                y = g.lmul_simple(delta_perm[a as usize], y);
            }
            delta[v] = y.0;
        }
        g.rmul = rmul;
        g.inv = inv;
        g.delta = delta;

        if order <= FULL_TABLE_MAX {
            let mut t = vec![0u32; order * order];
            for a in 0..order {
                for b in 0..order {
                    t[a * order + b] = g.mul_by_word(WeylElt(a as u32), WeylElt(b as u32)).0;
                }
            }
            g.table = Some(t);
        }
        Ok(g)
    }

    fn apply_word(&self, word: &[u8], start: WeylElt) -> WeylElt {
        let mut x = start;
        for &a in word.iter().rev() {
            x = self.lmul_simple(a as usize, x);
        }
        x
    }

    fn mul_by_word(&self, a: WeylElt, b: WeylElt) -> WeylElt {
        self.apply_word(&self.words[a.0 as usize], b)
    }

    pub fn order(&self) -> usize {
        self.words.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn n_pos(&self) -> usize {
        self.n_pos
    }

    pub fn elements(&self) -> impl Iterator<Item = WeylElt> {
        (0..self.words.len() as u32).map(WeylElt)
    }

    /// `s_i * v`
    pub fn lmul_simple(&self, i: usize, v: WeylElt) -> WeylElt {
        WeylElt(self.lmul[v.0 as usize * self.rank + i])
    }

    /// `v * s_i`
    pub fn rmul_simple(&self, v: WeylElt, i: usize) -> WeylElt {
        WeylElt(self.rmul[v.0 as usize * self.rank + i])
    }

    pub fn simple(&self, i: usize) -> WeylElt {
        WeylElt(self.lmul[i])
    }

    pub fn mul(&self, a: WeylElt, b: WeylElt) -> WeylElt {
        match &self.table {
            Some(t) => WeylElt(t[a.0 as usize * self.order() + b.0 as usize]),
            None => self.mul_by_word(a, b),
        }
    }

    pub fn inv(&self, v: WeylElt) -> WeylElt {
        WeylElt(self.inv[v.0 as usize])
    }

    pub fn delta(&self, v: WeylElt) -> WeylElt {
        WeylElt(self.delta[v.0 as usize])
    }

    pub fn delta_inv(&self, v: WeylElt) -> WeylElt {
        let mut x = v;
        loop {
            let y = self.delta(x);
            if y == v {
                return x;
            }
            x = y;
        }
    }

    pub fn word(&self, v: WeylElt) -> &[u8] {
        &self.words[v.0 as usize]
    }

    pub fn length(&self, v: WeylElt) -> usize {
        self.words[v.0 as usize].len()
    }

    pub fn from_word(&self, word: &[usize]) -> WeylElt {
        let mut x = WeylElt::ID;
        for &a in word.iter().rev() {
            x = self.lmul_simple(a, x);
        }
        x
    }

    /// Index of `v(root k)`.
    pub fn root_image(&self, v: WeylElt, k: usize) -> usize {
        self.perms[v.0 as usize * self.n_roots + k] as usize
    }

    pub fn root_is_positive(&self, k: usize) -> bool {
        k < self.n_pos
    }

    /// Cocharacter matrix, row-major `d x d`.
    pub fn matrix(&self, v: WeylElt) -> &[i64] {
        let d2 = self.dim * self.dim;
        &self.mats[v.0 as usize * d2..(v.0 as usize + 1) * d2]
    }

    pub fn act(&self, v: WeylElt, lambda: &[i64]) -> Vec<i64> {
        mat_vec(self.matrix(v), lambda)
    }

    /// Looks an element up by the images of the simple roots.
    pub fn from_simple_images(&self, images: &[u32]) -> Option<WeylElt> {
        self.index.get(images).map(|&j| WeylElt(j))
    }

    /// `true` if the reduced word of `v` only uses letters in `j`.
    pub fn in_parabolic(&self, v: WeylElt, j: &[usize]) -> bool {
        self.word(v).iter().all(|a| j.contains(&(*a as usize)))
    }

    /// Shortest element of `W_K v`.
    pub fn min_left_coset(&self, k: &[usize], v: WeylElt) -> WeylElt {
        let mut x = v;
        'outer: loop {
            for &i in k {
                let y = self.lmul_simple(i, x);
                if self.length(y) < self.length(x) {
                    x = y;
                    continue 'outer;
                }
            }
            return x;
        }
    }

    /// Longest element of `W_K v`.
    pub fn max_left_coset(&self, k: &[usize], v: WeylElt) -> WeylElt {
        let mut x = v;
        'outer: loop {
            for &i in k {
                let y = self.lmul_simple(i, x);
                if self.length(y) > self.length(x) {
                    x = y;
                    continue 'outer;
                }
            }
            return x;
        }
    }

    /// Shortest element of `v W_K`.
    pub fn min_right_coset(&self, v: WeylElt, k: &[usize]) -> WeylElt {
        let mut x = v;
        'outer: loop {
            for &i in k {
                let y = self.rmul_simple(x, i);
                if self.length(y) < self.length(x) {
                    x = y;
                    continue 'outer;
                }
            }
            return x;
        }
    }
}
