//! Simply-laced Dynkin diagrams: Cartan data, weights and roots, the
//! bipartite 2-colouring and the induced orientation of the doubled quiver.
//!
//! Weights live in fundamental-weight coordinates, so `⟨α_i^∨, λ⟩` is a
//! coordinate read and `s_i λ = λ − λ_i α_i` subtracts the `i`-th Cartan row.
//! Roots live in simple-root coordinates.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Weight in fundamental-weight coordinates, indexed by internal vertex index.
pub type Weight = Vec<i64>;
/// Root in simple-root coordinates.
pub type Root = Vec<i64>;

#[derive(Clone, Debug)]
pub struct DynkinDiagram {
    name: String,
    labels: Vec<usize>,
    label_to_index: HashMap<usize, usize>,
    adj: Vec<Vec<usize>>,
    cartan: Vec<Vec<i64>>,
}

/// JSON form of an explicit diagram: `{"vertices":[...],"edges":[[i,j],...]}`.
#[derive(Serialize, Deserialize)]
pub struct AdjacencySpec {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl DynkinDiagram {
    /// Parse a named spec such as `"A4"`, `"D5"`, `"E6"` or a disjoint union
    /// `"A2+A1"`. Components are labelled consecutively starting at 1.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut offset = 0usize;
        for part in spec.split('+') {
            let part = part.trim();
            if part.len() < 2 {
                return Err(Error::Diagram(format!("unrecognized component {part:?}")));
            }
            let (family, rank_str) = part.split_at(1);
            let n: usize = rank_str
                .parse()
                .map_err(|_| Error::Diagram(format!("bad rank in {part:?}")))?;
            match family {
                "A" | "a" => {
                    if n < 1 {
                        return Err(Error::Diagram("A_n needs n >= 1".into()));
                    }
                    for k in 1..n {
                        edges.push((offset + k, offset + k + 1));
                    }
                }
                "D" | "d" => {
                    if n < 4 {
                        return Err(Error::Diagram("D_n needs n >= 4".into()));
                    }
                    for k in 1..n - 1 {
                        edges.push((offset + k, offset + k + 1));
                    }
                    edges.push((offset + n - 2, offset + n));
                }
                "E" | "e" => {
                    if !(6..=8).contains(&n) {
                        return Err(Error::Diagram("E_n needs n in {6,7,8}".into()));
                    }
                    for k in 1..n - 1 {
                        edges.push((offset + k, offset + k + 1));
                    }
                    edges.push((offset + 3, offset + n));
                }
                other => {
                    return Err(Error::Diagram(format!(
                        "unsupported family {other:?} (simply-laced A/D/E only)"
                    )));
                }
            }
            offset += n;
        }
        if offset == 0 {
            return Err(Error::Diagram("empty diagram spec".into()));
        }
        Self::from_parts(spec.trim().to_string(), (1..=offset).collect(), edges)
    }

    /// Build from an explicit vertex/edge list, validating the invariants.
    pub fn from_adjacency(spec: &AdjacencySpec) -> Result<Self> {
        Self::from_parts("custom".into(), spec.vertices.clone(), spec.edges.clone())
    }

    pub fn from_adjacency_json(json: &str) -> Result<Self> {
        let spec: AdjacencySpec =
            serde_json::from_str(json).map_err(|e| Error::Parse(format!("adjacency json: {e}")))?;
        Self::from_adjacency(&spec)
    }

    fn from_parts(name: String, labels: Vec<usize>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = labels.len();
        let mut label_to_index = HashMap::new();
        for (i, &l) in labels.iter().enumerate() {
            if label_to_index.insert(l, i).is_some() {
                return Err(Error::Diagram(format!("duplicate vertex label {l}")));
            }
        }
        let mut adj = vec![Vec::new(); n];
        let mut seen = std::collections::HashSet::new();
        for &(a, b) in &edges {
            let (ia, ib) = (
                *label_to_index
                    .get(&a)
                    .ok_or_else(|| Error::Diagram(format!("edge endpoint {a} is not a vertex")))?,
                *label_to_index
                    .get(&b)
                    .ok_or_else(|| Error::Diagram(format!("edge endpoint {b} is not a vertex")))?,
            );
            if ia == ib {
                return Err(Error::Diagram(format!("self-loop at vertex {a}")));
            }
            let key = (ia.min(ib), ia.max(ib));
            if !seen.insert(key) {
                return Err(Error::Diagram(format!("repeated edge {a}-{b}")));
            }
            adj[ia].push(ib);
            adj[ib].push(ia);
        }
        for (i, nbrs) in adj.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if nbrs.len() > 3 {
                return Err(Error::Diagram(format!(
                    "vertex {} has degree {} > 3",
                    labels[i],
                    nbrs.len()
                )));
            }
        }
        // forest check: |E| per component = |V| - 1
        if seen.len() + Self::count_components(&adj) != n {
            return Err(Error::Diagram("diagram contains a cycle".into()));
        }
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            cartan[i][i] = 2;
            for &j in &adj[i] {
                cartan[i][j] = -1;
            }
        }
        Ok(DynkinDiagram { name, labels, label_to_index, adj, cartan })
    }

    fn count_components(adj: &[Vec<usize>]) -> usize {
        let n = adj.len();
        let mut seen = vec![false; n];
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, index: usize) -> usize {
        self.labels[index]
    }

    pub fn index_of(&self, label: usize) -> Result<usize> {
        self.label_to_index
            .get(&label)
            .copied()
            .ok_or_else(|| Error::Diagram(format!("no vertex labelled {label}")))
    }

    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    pub fn neighbours(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.cartan[i][j] < 0
    }

    /// Undirected edges as internal index pairs `(i, j)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.rank() {
            for &j in &self.adj[i] {
                if i < j {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Is `subset` (internal indices) connected in the diagram?
    pub fn is_connected_subset(&self, subset: &[usize]) -> bool {
        if subset.is_empty() {
            return false;
        }
        let inset: std::collections::HashSet<usize> = subset.iter().copied().collect();
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![subset[0]];
        seen.insert(subset[0]);
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if inset.contains(&w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == subset.len()
    }

    // -- weight arithmetic ---------------------------------------------------

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        let mut w = vec![0i64; self.rank()];
        w[i] = 1;
        w
    }

    pub fn zero_weight(&self) -> Weight {
        vec![0; self.rank()]
    }

    /// `⟨α_i^∨, λ⟩` for λ in fundamental-weight coordinates.
    pub fn pairing(&self, i: usize, lambda: &Weight) -> i64 {
        lambda[i]
    }

    /// `s_i λ = λ − ⟨α_i^∨, λ⟩ α_i`, with `α_i` expanded via the Cartan row.
    pub fn reflect_weight(&self, i: usize, lambda: &Weight) -> Weight {
        let c = lambda[i];
        if c == 0 {
            return lambda.clone();
        }
        lambda
            .iter()
            .enumerate()
            .map(|(j, &x)| x - c * self.cartan[i][j])
            .collect()
    }

    /// `α_i` in fundamental-weight coordinates (the `i`-th Cartan row).
    pub fn simple_root_as_weight(&self, i: usize) -> Weight {
        self.cartan[i].clone()
    }

    /// `s_i β` for β in simple-root coordinates.
    pub fn reflect_root(&self, i: usize, beta: &Root) -> Root {
        let pairing: i64 = (0..self.rank()).map(|j| self.cartan[i][j] * beta[j]).sum();
        let mut out = beta.clone();
        out[i] -= pairing;
        out
    }

    /// All positive roots in simple-root coordinates, sorted.
    pub fn positive_roots(&self) -> Vec<Root> {
        let n = self.rank();
        let mut roots: std::collections::BTreeSet<Root> = (0..n)
            .map(|i| {
                let mut e = vec![0i64; n];
                e[i] = 1;
                e
            })
            .collect();
        loop {
            let mut new = Vec::new();
            for r in &roots {
                for i in 0..n {
                    let s = self.reflect_root(i, r);
                    if s.iter().all(|&c| c >= 0) && !roots.contains(&s) {
                        new.push(s);
                    }
                }
            }
            if new.is_empty() {
                break;
            }
            roots.extend(new);
        }
        roots.into_iter().collect()
    }

    /// `⟨β^∨, λ⟩` for a (simply-laced) root β in simple-root coordinates and
    /// λ in fundamental-weight coordinates.
    pub fn root_pairing(&self, beta: &Root, lambda: &Weight) -> i64 {
        beta.iter().zip(lambda).map(|(&b, &l)| b * l).sum()
    }

    /// Weyl dimension formula, exact over big integers.
    pub fn weyl_dim(&self, lambda: &Weight) -> BigInt {
        let rho: Weight = vec![1; self.rank()];
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for beta in self.positive_roots() {
            let top = self.root_pairing(&beta, lambda) + self.root_pairing(&beta, &rho);
            let bot = self.root_pairing(&beta, &rho);
            num *= BigInt::from(top);
            den *= BigInt::from(bot);
        }
        let (quot, rem) = num.div_rem_euclid(&den);
        assert!(rem.is_zero(), "Weyl dimension formula did not divide exactly");
        quot
    }

    /// `det C ≠ 0` for every finite-type diagram built here.
    pub fn cartan_nonsingular(&self) -> bool {
        let m = crate::ratmat::QMat::from_int_rows(&self.cartan, self.rank());
        m.rank() == self.rank()
    }

    /// The involution θ with `w_0(α_i) = −α_{θ(i)}` for the longest element
    /// `w_0` of the full Weyl group.
    pub fn longest_element_involution(&self) -> HashMap<usize, usize> {
        self.theta_for_subset(&(0..self.rank()).collect::<Vec<_>>())
            .expect("full vertex set")
    }

    /// θ_J for the parabolic W_J: `w_0^J(α_j) = −α_{θ_J(j)}`, as a map on the
    /// members of `subset` (internal indices).
    pub fn theta_for_subset(&self, subset: &[usize]) -> Result<HashMap<usize, usize>> {
        let word = self.longest_word_of_subset(subset)?;
        let mut theta = HashMap::new();
        for &j in subset {
            let mut beta = vec![0i64; self.rank()];
            beta[j] = 1;
            for &i in word.iter().rev() {
                beta = self.reflect_root(i, &beta);
            }
            // now beta = w_0^J(α_j); expect −α_t
            let mut tgt = None;
            for (t, &c) in beta.iter().enumerate() {
                if c != 0 {
                    if c != -1 || tgt.is_some() {
                        tgt = None;
                        break;
                    }
                    tgt = Some(t);
                }
            }
            let t = tgt.ok_or_else(|| {
                Error::Internal(format!("w_0^J(α_{}) is not a negative simple root", self.label(j)))
            })?;
            theta.insert(j, t);
        }
        Ok(theta)
    }

    /// A reduced word (internal indices, leftmost letter applied last) for the
    /// longest element of the parabolic subgroup generated by `subset`.
    pub fn longest_word_of_subset(&self, subset: &[usize]) -> Result<Vec<usize>> {
        // walk ρ_J from dominant to antidominant within the subsystem
        let mut mu: Weight = self.zero_weight();
        for &j in subset {
            mu[j] = 1;
        }
        let mut steps: Vec<usize> = Vec::new();
        let bound = 1 << 22;
        loop {
            let Some(&i) = subset.iter().find(|&&i| mu[i] > 0) else { break };
            mu = self.reflect_weight(i, &mu);
            steps.push(i);
            if steps.len() > bound {
                return Err(Error::Bounds("longest-element walk did not terminate".into()));
            }
        }
        debug_assert!(subset.iter().all(|&i| mu[i] <= 0));
        steps.reverse();
        Ok(steps)
    }
}

trait DivRemEuclid {
    fn div_rem_euclid(&self, other: &Self) -> (Self, Self)
    where
        Self: Sized;
}

impl DivRemEuclid for BigInt {
    fn div_rem_euclid(&self, other: &Self) -> (Self, Self) {
        let q = self / other;
        let r = self - &q * other;
        (q, r)
    }
}

// ---------------------------------------------------------------------------
// 2-colouring and orientation
// ---------------------------------------------------------------------------

/// Proper 2-colouring of the diagram with values ±1.
#[derive(Clone, Debug)]
pub struct TwoColouring {
    pub colour: Vec<i8>,
}

/// Orientation of the doubled quiver: genuine arrows run from (−)-vertices to
/// (+)-vertices; the reversed copies carry ε = −1.
#[derive(Clone, Debug)]
pub struct Orientation {
    /// Genuine arrows as (tail, head) internal index pairs.
    pub arrows: Vec<(usize, usize)>,
}

impl Orientation {
    /// ε for the doubled-quiver arrow tail→head (must be an edge).
    pub fn epsilon(&self, tail: usize, head: usize) -> i64 {
        if self.arrows.contains(&(tail, head)) {
            1
        } else {
            debug_assert!(self.arrows.contains(&(head, tail)));
            -1
        }
    }
}

/// Deterministic 2-colouring (the lowest-labelled vertex of each component is
/// `+`) and the induced − → + orientation.
pub fn two_colour_and_orient(d: &DynkinDiagram) -> (TwoColouring, Orientation) {
    let n = d.rank();
    let mut colour = vec![0i8; n];
    for comp in d.components() {
        let root = *comp
            .iter()
            .min_by_key(|&&i| d.label(i))
            .expect("nonempty component");
        colour[root] = 1;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &w in d.neighbours(v) {
                if colour[w] == 0 {
                    colour[w] = -colour[v];
                    stack.push(w);
                }
            }
        }
    }
    let mut arrows = Vec::new();
    for (i, j) in d.edges() {
        if colour[i] == -1 {
            arrows.push((i, j));
        } else {
            arrows.push((j, i));
        }
    }
    debug_assert!(d.edges().iter().all(|&(i, j)| colour[i] != colour[j]));
    (TwoColouring { colour }, Orientation { arrows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a3_cartan() {
        let d = DynkinDiagram::from_spec("A3").unwrap();
        assert_eq!(d.rank(), 3);
        for i in 0..3 {
            assert_eq!(d.cartan(i, i), 2);
        }
        assert_eq!(d.cartan(0, 1), -1);
        assert_eq!(d.cartan(1, 2), -1);
        assert_eq!(d.cartan(0, 2), 0);
    }

    #[test]
    fn d4_degree_three() {
        let d = DynkinDiagram::from_spec("D4").unwrap();
        let hub = d.index_of(2).unwrap();
        assert_eq!(d.neighbours(hub).len(), 3);
        let nbr_labels: Vec<usize> = d.neighbours(hub).iter().map(|&i| d.label(i)).collect();
        assert_eq!(nbr_labels, vec![1, 3, 4]);
    }

    #[test]
    fn cycle_rejected() {
        let spec = AdjacencySpec { vertices: vec![1, 2, 3], edges: vec![(1, 2), (2, 3), (3, 1)] };
        assert!(DynkinDiagram::from_adjacency(&spec).is_err());
    }

    #[test]
    fn degree_four_rejected() {
        let spec = AdjacencySpec {
            vertices: vec![1, 2, 3, 4, 5],
            edges: vec![(1, 2), (1, 3), (1, 4), (1, 5)],
        };
        assert!(DynkinDiagram::from_adjacency(&spec).is_err());
    }

    #[test]
    fn reflection_examples() {
        let d = DynkinDiagram::from_spec("A3").unwrap();
        // s_2 ω_2 = ω_1 − ω_2 + ω_3
        let w2 = d.fundamental_weight(1);
        assert_eq!(d.reflect_weight(1, &w2), vec![1, -1, 1]);
        // fixed when the pairing vanishes
        let w1 = d.fundamental_weight(0);
        assert_eq!(d.reflect_weight(1, &w1), w1);
        // pairing with own coroot
        assert_eq!(d.pairing(0, &d.fundamental_weight(0)), 1);
    }

    #[test]
    fn positive_root_counts() {
        for (spec, count) in [("A3", 6), ("A4", 10), ("D4", 12), ("D5", 20), ("E6", 36)] {
            let d = DynkinDiagram::from_spec(spec).unwrap();
            assert_eq!(d.positive_roots().len(), count, "{spec}");
            assert!(d.cartan_nonsingular(), "{spec}");
        }
    }

    #[test]
    fn weyl_dims() {
        let a3 = DynkinDiagram::from_spec("A3").unwrap();
        assert_eq!(a3.weyl_dim(&a3.fundamental_weight(1)), BigInt::from(6));
        let mut two_w2 = a3.zero_weight();
        two_w2[1] = 2;
        assert_eq!(a3.weyl_dim(&two_w2), BigInt::from(20));
        let d4 = DynkinDiagram::from_spec("D4").unwrap();
        assert_eq!(d4.weyl_dim(&d4.fundamental_weight(0)), BigInt::from(8));
    }

    #[test]
    fn colouring_and_orientation() {
        let d = DynkinDiagram::from_spec("A3").unwrap();
        let (c, o) = two_colour_and_orient(&d);
        assert_eq!(c.colour, vec![1, -1, 1]);
        // arrows 2→1 and 2→3
        let i1 = d.index_of(1).unwrap();
        let i2 = d.index_of(2).unwrap();
        let i3 = d.index_of(3).unwrap();
        assert!(o.arrows.contains(&(i2, i1)));
        assert!(o.arrows.contains(&(i2, i3)));
        assert_eq!(o.epsilon(i2, i1), 1);
        assert_eq!(o.epsilon(i1, i2), -1);
    }

    #[test]
    fn union_components_coloured_independently() {
        let d = DynkinDiagram::from_spec("A2+A1").unwrap();
        let (c, _) = two_colour_and_orient(&d);
        assert_eq!(c.colour, vec![1, -1, 1]);
        assert_eq!(d.components().len(), 2);
    }

    #[test]
    fn theta_involutions() {
        // −w_0 acts by the flip on A_3 and trivially on D_4
        let a3 = DynkinDiagram::from_spec("A3").unwrap();
        let th = a3.longest_element_involution();
        assert_eq!(th[&0], 2);
        assert_eq!(th[&1], 1);
        let d4 = DynkinDiagram::from_spec("D4").unwrap();
        let th = d4.longest_element_involution();
        for i in 0..4 {
            assert_eq!(th[&i], i);
        }
    }
}
