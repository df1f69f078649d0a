//! Brute-force enumeration of `B(G)_x` with the dimensions of the affine
//! Deligne-Lusztig varieties, by Deligne-Lusztig reduction.
//!
//! Base case: `x` of minimal length in its class meets exactly `[x]`, with
//! `dim X_x(b) = l(x) - <2 rho, nu>`. Otherwise a cyclic shift `y` of `x`
//! (same length) has a simple `s` with `l(s y delta(s)) = l(y) - 2`, and
//! `X_y(b)` is covered by pieces over `s y delta(s)` and `s y`, both shifted
//! by one in dimension.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::affine::AffineElt;
use crate::error::{Error, Result};
use crate::lattice::{q_int, Q};
use crate::root_datum::RootDatum;
use crate::sigma::SigmaClass;

/// Node limits for the searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_nodes: 1_000_000 }
    }
}

/// Classes meeting `IxI` with `dim X_x(b)`. Absent classes have empty `X_x(b)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionResult {
    pub classes: BTreeMap<SigmaClass, i64>,
}

impl ReductionResult {
    fn shifted(&self, by: i64) -> ReductionResult {
        ReductionResult { classes: self.classes.iter().map(|(k, v)| (k.clone(), v + by)).collect() }
    }

    fn merge(&mut self, other: ReductionResult) {
        for (k, v) in other.classes {
            let e = self.classes.entry(k).or_insert(v);
            if *e < v {
                *e = v;
            }
        }
    }

    pub fn dim(&self, b: &SigmaClass) -> Option<i64> {
        self.classes.get(b).copied()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Classes with no strictly smaller class in the set.
    pub fn minimal_classes(&self, rd: &RootDatum) -> Vec<SigmaClass> {
        self.classes
            .keys()
            .filter(|b| !self.classes.keys().any(|c| rd.lt(c, b)))
            .cloned()
            .collect()
    }

    pub fn maximal_classes(&self, rd: &RootDatum) -> Vec<SigmaClass> {
        self.classes
            .keys()
            .filter(|b| !self.classes.keys().any(|c| rd.lt(b, c)))
            .cloned()
            .collect()
    }
}

/// Memoized reduction engine for one datum.
pub struct Reducer<'a> {
    rd: &'a RootDatum,
    memo: BTreeMap<AffineElt, Arc<ReductionResult>>,
    budget: Budget,
    nodes: u64,
    order: Option<Vec<usize>>,
}

impl<'a> Reducer<'a> {
    pub fn new(rd: &'a RootDatum, budget: Budget) -> Self {
        Reducer { rd, memo: BTreeMap::new(), budget, nodes: 0, order: None }
    }

    /// Fixes the order in which generators are tried (for replay tests).
    pub fn with_order(mut self, order: Vec<usize>) -> Self {
        self.order = Some(order);
        self
    }

    pub fn datum(&self) -> &RootDatum {
        self.rd
    }

    pub fn memo_size(&self) -> usize {
        self.memo.len()
    }

    pub fn reduce(&mut self, x: &AffineElt) -> Result<ReductionResult> {
        Ok((*self.reduce_arc(x)?).clone())
    }

    fn reduce_arc(&mut self, x: &AffineElt) -> Result<Arc<ReductionResult>> {
        if let Some(r) = self.memo.get(x) {
            return Ok(r.clone());
        }
        let rd = self.rd;
        let left = self.budget.max_nodes.saturating_sub(self.nodes);
        let orbit = rd
            .shift_orbit_ordered(x, left, self.order.as_deref())
            .map_err(|_| Error::SearchBudgetExceeded(self.budget.max_nodes))?;
        self.nodes += orbit.members.len() as u64;
        let result = match &orbit.descent {
            None => {
                let b = rd.class_of(x);
                let dim = rd.length(x) as i64 - rd.two_rho_int(&b);
                let mut classes = BTreeMap::new();
                classes.insert(b, dim);
                ReductionResult { classes }
            }
            Some((y, i)) => {
                let s = &rd.affine_generators()[*i];
                let sy = rd.mul(s, y);
                let sys = rd.mul(&sy, &rd.delta_of(s));
                let mut r = self.reduce_arc(&sys)?.shifted(1);
                r.merge(self.reduce_arc(&sy)?.shifted(1));
                r
            }
        };
        let result = Arc::new(result);
        for m in orbit.members {
            self.memo.insert(m, result.clone());
        }
        Ok(result)
    }

    /// `dim X_x(b)`, or `None` when it is empty.
    pub fn dim_adlv(&mut self, x: &AffineElt, b: &SigmaClass) -> Result<Option<i64>> {
        Ok(self.reduce_arc(x)?.dim(b))
    }

    pub fn strata_table(&mut self, x: &AffineElt) -> Result<StrataTable> {
        let rd = self.rd;
        let res = self.reduce_arc(x)?;
        let l = rd.length(x) as i64;
        let mut rows = Vec::new();
        for (b, &dim) in &res.classes {
            let vdim = rd.virtual_dimension(x, b)?;
            let two_rho = rd.two_rho_int(b);
            rows.push(StrataRow {
                class: b.clone(),
                dim,
                delta: &vdim - q_int(dim),
                vdim,
                codim: l - two_rho - dim,
                defect: rd.defect(b)?,
                two_rho,
            });
        }
        rows.sort_by(|a, b| {
            (a.two_rho, &a.class.nu, &a.class.kappa).cmp(&(b.two_rho, &b.class.nu, &b.class.kappa))
        });
        let minimal = res.minimal_classes(rd);
        let maximal = res.maximal_classes(rd);
        let has_unique_min = minimal.len() == 1;
        let m_x = match minimal.as_slice() {
            [m] => m.clone(),
            _ => rd.minimal_newton(x)?,
        };
        let b_x = maximal.first().cloned().expect("non-empty");
        let gaps: Vec<SigmaClass> = rd
            .enumerate_segment(&rd.kappa(x), &b_x.nu)?
            .into_iter()
            .filter(|b| rd.leq(&m_x, b) && rd.leq(b, &b_x) && !res.classes.contains_key(b))
            .collect();
        let saturated = gaps.is_empty();
        let cordial_candidate = saturated && rows.iter().all(|r| r.delta == q_int(0));
        Ok(StrataTable {
            x: x.clone(),
            length: l as usize,
            rows,
            min_class: m_x,
            max_class: b_x,
            has_unique_min,
            unique_max: maximal.len() == 1,
            saturated,
            cordial_candidate,
            gaps,
        })
    }
}

/// One class of `B(G)_x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrataRow {
    pub class: SigmaClass,
    pub dim: i64,
    pub vdim: Q,
    /// `vdim - dim`
    pub delta: Q,
    /// `l(x) - <2 rho, nu> - dim`
    pub codim: i64,
    pub defect: usize,
    pub two_rho: i64,
}

/// The poset `B(G)_x` with dimensions, sorted by `(<2 rho, nu>, nu, kappa)`,
/// which refines the partial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrataTable {
    pub x: AffineElt,
    pub length: usize,
    pub rows: Vec<StrataRow>,
    pub min_class: SigmaClass,
    pub max_class: SigmaClass,
    pub has_unique_min: bool,
    pub unique_max: bool,
    /// No class strictly between the extremes is missing.
    pub saturated: bool,
    /// Saturated and every row has `delta = 0`.
    pub cordial_candidate: bool,
    /// Classes between `min_class` and `max_class` not met by `IxI`.
    pub gaps: Vec<SigmaClass>,
}

impl StrataTable {
    pub fn row(&self, b: &SigmaClass) -> Option<&StrataRow> {
        self.rows.iter().find(|r| &r.class == b)
    }
}

impl RootDatum {
    /// Every `x = w tau` with `w` in `W_a`, `l(w) <= max_len`, and `tau` from
    /// [`RootDatum::omega_reps`].
    pub fn sweep_elements(&self, max_len: usize, free_range: i64, budget: Budget) -> Result<Vec<AffineElt>> {
        let ball = self.affine_weyl_ball(max_len, budget.max_nodes)?;
        let reps = self.omega_reps(free_range);
        let mut out = Vec::with_capacity(ball.len() * reps.len());
        for tau in &reps {
            for w in &ball {
                out.push(self.mul(w, tau));
            }
        }
        Ok(out)
    }

    pub fn reduce(&self, x: &AffineElt, budget: Budget) -> Result<ReductionResult> {
        Reducer::new(self, budget).reduce(x)
    }

    pub fn strata_table(&self, x: &AffineElt, budget: Budget) -> Result<StrataTable> {
        Reducer::new(self, budget).strata_table(x)
    }

    /// Elements of length at most `max_len` whose `B(G)_x` is not saturated.
    pub fn gap_search(&self, max_len: usize, free_range: i64, budget: Budget) -> Result<Vec<StrataTable>> {
        let mut reducer = Reducer::new(self, budget);
        let mut out = Vec::new();
        for x in self.sweep_elements(max_len, free_range, budget)? {
            let t = reducer.strata_table(&x)?;
            if !t.saturated {
                out.push(t);
            }
        }
        Ok(out)
    }
}
