//! Local-ratio vertex deletion to bounded degeneracy.
//!
//! Weights are split as `w = w1 + w2` with `w1(u) = ε·deg(u)` and
//! `ε = min w(v)/deg(v)`, which zeroes at least one vertex weight; zero-weight
//! vertices are then deleted for free and the result pruned back to a
//! minimal solution. The arithmetic is exact (`BigRational`), so repeated
//! splits never overflow.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{degeneracy, EditSet, Graph, Weight};

/// Which case of the recursion fired.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Branch {
    /// A vertex of degree ≤ βr was peeled off.
    LowDegree(usize),
    /// A zero-weight vertex was set aside.
    ZeroWeight(usize),
    /// The weights were split into `w1 + w2`.
    Split,
}

/// One recursion record; `w` is the weight function on entry. Outside
/// [`Branch::Split`] steps `ε = 0`, `w1 = 0` and `w2 = w`.
#[derive(Clone, Debug)]
pub struct LocalRatioStep {
    pub branch: Branch,
    pub epsilon: BigRational,
    pub w: BTreeMap<usize, BigRational>,
    pub w1: BTreeMap<usize, BigRational>,
    pub w2: BTreeMap<usize, BigRational>,
    /// Degrees of the current graph at this step.
    pub degrees: BTreeMap<usize, usize>,
}

#[derive(Clone, Debug)]
pub struct LocalRatioOutcome {
    pub edit: EditSet,
    pub trace: Vec<LocalRatioStep>,
    /// The degeneracy target ⌊βr⌋ actually enforced.
    pub bound: usize,
}

fn big(w: Weight) -> BigRational {
    BigRational::new(BigInt::from(*w.numer()), BigInt::from(*w.denom()))
}

/// `⌊β·r⌋` for rational β.
pub fn scaled_bound(r: usize, beta: Weight) -> usize {
    let v = beta * Weight::from_integer(r as i64);
    v.floor().to_integer().to_usize().unwrap_or(0)
}

/// The ratio `(4m − βrn)/(m − rn)` from the degree-sum argument, when m > rn.
pub fn ratio_bound(m: usize, n: usize, r: usize, beta: Weight) -> Option<f64> {
    let (m, n, r) = (m as f64, n as f64, r as f64);
    let b = *beta.numer() as f64 / *beta.denom() as f64;
    (m > r * n).then(|| (4.0 * m - b * r * n) / (m - r * n))
}

/// Delete vertices so that the result has degeneracy ≤ ⌊βr⌋.
pub fn local_ratio_vertex_edit(g: &Graph, r: usize, beta: Weight) -> Result<EditSet> {
    Ok(local_ratio_vertex_edit_traced(g, r, beta)?.edit)
}

pub fn local_ratio_vertex_edit_traced(
    g: &Graph,
    r: usize,
    beta: Weight,
) -> Result<LocalRatioOutcome> {
    if r < 1 {
        return Err(Error::Param("local ratio needs r ≥ 1".into()));
    }
    if beta < Weight::from_integer(1) {
        return Err(Error::Param("local ratio needs β ≥ 1".into()));
    }
    let bound = scaled_bound(r, beta);
    let w: BTreeMap<usize, BigRational> =
        g.vertices().map(|v| (v, big(g.vertex_weight(v)))).collect();
    let mut trace = Vec::new();
    let x = recurse(g.clone(), w, bound, &mut trace);
    Ok(LocalRatioOutcome {
        edit: EditSet::from_vertices(g, x),
        trace,
        bound,
    })
}

fn feasible_without(g: &Graph, x: &BTreeSet<usize>, bound: usize) -> bool {
    let keep: BTreeSet<usize> = g.vertices().filter(|v| !x.contains(v)).collect();
    degeneracy(&g.induced(&keep)).0 <= bound
}

/// Drop elements (ascending id) whose removal keeps the solution feasible.
/// One pass suffices: feasibility is monotone under taking subgraphs.
pub fn make_minimal(g: &Graph, mut x: BTreeSet<usize>, bound: usize) -> BTreeSet<usize> {
    for v in x.clone() {
        x.remove(&v);
        if !feasible_without(g, &x, bound) {
            x.insert(v);
        }
    }
    x
}

fn recurse(
    mut g: Graph,
    w: BTreeMap<usize, BigRational>,
    bound: usize,
    trace: &mut Vec<LocalRatioStep>,
) -> BTreeSet<usize> {
    if g.order() == 0 {
        return BTreeSet::new();
    }
    let degrees: BTreeMap<usize, usize> = g.vertices().map(|v| (v, g.degree(v))).collect();
    let record = |branch, trace: &mut Vec<LocalRatioStep>, w: &BTreeMap<usize, BigRational>| {
        trace.push(LocalRatioStep {
            branch,
            epsilon: BigRational::zero(),
            w: w.clone(),
            w1: w.keys().map(|&v| (v, BigRational::zero())).collect(),
            w2: w.clone(),
            degrees: degrees.clone(),
        })
    };
    let low = g.vertices().find(|&v| g.degree(v) <= bound);
    if let Some(v) = low {
        record(Branch::LowDegree(v), trace, &w);
        g.remove_vertex(v);
        let mut w = w;
        w.remove(&v);
        return recurse(g, w, bound, trace);
    }
    let zero = g.vertices().find(|v| w[v].is_zero());
    if let Some(v) = zero {
        record(Branch::ZeroWeight(v), trace, &w);
        let full = g.clone();
        g.remove_vertex(v);
        let mut w_rest = w;
        w_rest.remove(&v);
        let x = recurse(g, w_rest, bound, trace);
        if feasible_without(&full, &x, bound) {
            return x;
        }
        let mut with_v = x;
        with_v.insert(v);
        return make_minimal(&full, with_v, bound);
    }
    // Every degree exceeds the bound (≥ 1) and every weight is positive.
    let epsilon = g
        .vertices()
        .map(|v| &w[&v] / BigRational::from_integer(BigInt::from(g.degree(v))))
        .min()
        .expect("graph is nonempty");
    let w1: BTreeMap<usize, BigRational> = g
        .vertices()
        .map(|v| {
            (
                v,
                &epsilon * BigRational::from_integer(BigInt::from(g.degree(v))),
            )
        })
        .collect();
    let w2: BTreeMap<usize, BigRational> = g.vertices().map(|v| (v, &w[&v] - &w1[&v])).collect();
    debug_assert!(w2.values().all(|x| !x.is_negative()));
    trace.push(LocalRatioStep {
        branch: Branch::Split,
        epsilon,
        w: w.clone(),
        w1,
        w2: w2.clone(),
        degrees,
    });
    recurse(g, w2, bound, trace)
}
