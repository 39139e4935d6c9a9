//! Type-A semistandard Young tableaux, Gelfand–Tsetlin patterns, the
//! rectangular-tableau ↔ RPP correspondence, and Schützenberger involutions
//! computed on explicit crystal graphs.
//!
//! The box-entry crystal operators use the reading word that lists rows from
//! the bottom row up, each left to right; with the tensor conventions of
//! [`crate::crystal`] this realizes the usual crystal structure on `SSYT`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::crystal::{CrystalGraph, IdealCrystal, Rpp};
use crate::dynkin::{DynkinDiagram, Weight};
use crate::heap::Heap;
use crate::weyl;
use crate::{Error, Result};

/// Semistandard Young tableau with entries in `1..=m`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Tableau {
    pub rows: Vec<Vec<u8>>,
    pub max_entry: u8,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<u8>>, max_entry: u8) -> Result<Self> {
        let t = Tableau { rows, max_entry };
        t.validate()?;
        Ok(t)
    }

    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.len()).collect()
    }

    pub fn validate(&self) -> Result<()> {
        for (r, row) in self.rows.iter().enumerate() {
            if r + 1 < self.rows.len() && self.rows[r + 1].len() > row.len() {
                return Err(Error::Tableau("shape is not a partition".into()));
            }
            for (c, &e) in row.iter().enumerate() {
                if e == 0 || e > self.max_entry {
                    return Err(Error::Tableau(format!("entry {e} out of range")));
                }
                if c + 1 < row.len() && row[c + 1] < e {
                    return Err(Error::Tableau("row decreases".into()));
                }
                if r + 1 < self.rows.len() {
                    if let Some(&below) = self.rows[r + 1].get(c) {
                        if below <= e {
                            return Err(Error::Tableau("column does not increase".into()));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Weight in fundamental-weight coordinates of `A_{m-1}`:
    /// `wt(τ) = Σ (content_i − content_{i+1}) ω_i`.
    pub fn weight(&self) -> Weight {
        let m = self.max_entry as usize;
        let mut content = vec![0i64; m + 1];
        for row in &self.rows {
            for &e in row {
                content[e as usize] += 1;
            }
        }
        (1..m).map(|i| content[i] - content[i + 1]).collect()
    }
}

/// The all-minimal rectangular tableau (row r filled with r): the highest
/// weight element of `SSYT(n^p)`.
pub fn highest_rectangular(p: usize, n: usize, m: u8) -> Tableau {
    Tableau {
        rows: (1..=p).map(|r| vec![r as u8; n]).collect(),
        max_entry: m,
    }
}

/// Every semistandard tableau of rectangular shape `(n^p)` with entries ≤ m.
pub fn all_rectangular(p: usize, n: usize, m: u8) -> Vec<Tableau> {
    let mut out = Vec::new();
    let mut rows: Vec<Vec<u8>> = vec![vec![0; n]; p];
    fn rec(p: usize, n: usize, m: u8, pos: usize, rows: &mut Vec<Vec<u8>>, out: &mut Vec<Tableau>) {
        if pos == p * n {
            out.push(Tableau { rows: rows.clone(), max_entry: m });
            return;
        }
        let (r, c) = (pos / n, pos % n);
        let lo = {
            let left = if c > 0 { rows[r][c - 1] } else { 1 };
            let above = if r > 0 { rows[r - 1][c] + 1 } else { 1 };
            left.max(above)
        };
        for e in lo..=m {
            rows[r][c] = e;
            rec(p, n, m, pos + 1, rows, out);
        }
        rows[r][c] = 0;
    }
    rec(p, n, m, 0, &mut rows, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Gelfand–Tsetlin patterns
// ---------------------------------------------------------------------------

/// Triangular array `(λ^{(1)}, …, λ^{(m)})`; row `i` (1-based) has `i` parts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GtPattern {
    pub rows: Vec<Vec<i64>>,
}

impl GtPattern {
    pub fn m(&self) -> usize {
        self.rows.len()
    }

    /// Interlacing: `λ^{(i+1)}_{k+1} ≤ λ^{(i)}_k ≤ λ^{(i+1)}_k`.
    pub fn validate(&self) -> Result<()> {
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != i + 1 {
                return Err(Error::Tableau("GT row lengths must be 1..m".into()));
            }
            for w in row.windows(2) {
                if w[0] < w[1] {
                    return Err(Error::Tableau("GT row is not weakly decreasing".into()));
                }
            }
            if row.iter().any(|&x| x < 0) {
                return Err(Error::Tableau("GT entries must be nonnegative".into()));
            }
            if i + 1 < self.rows.len() {
                let next = &self.rows[i + 1];
                for k in 0..row.len() {
                    if !(next[k + 1] <= row[k] && row[k] <= next[k]) {
                        return Err(Error::Tableau(format!(
                            "interlacing fails at λ^{}_{}",
                            i + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `λ^{(i)}` is the shape of the subtableau with labels ≤ i.
pub fn gt_of_tableau(t: &Tableau) -> GtPattern {
    let m = t.max_entry as usize;
    let rows = (1..=m)
        .map(|i| {
            (0..i)
                .map(|k| {
                    t.rows
                        .get(k)
                        .map(|row| row.iter().filter(|&&e| (e as usize) <= i).count() as i64)
                        .unwrap_or(0)
                })
                .collect()
        })
        .collect();
    GtPattern { rows }
}

/// Inverse of [`gt_of_tableau`]; fails when interlacing does not hold.
pub fn tableau_of_gt(gt: &GtPattern) -> Result<Tableau> {
    gt.validate()?;
    let m = gt.m();
    let shape = &gt.rows[m - 1];
    let mut rows: Vec<Vec<u8>> = Vec::new();
    for (k, &parts) in shape.iter().enumerate() {
        if parts == 0 {
            continue;
        }
        let mut row = Vec::with_capacity(parts as usize);
        for i in 1..=m {
            let cur = *gt.rows[i - 1].get(k).unwrap_or(&0);
            let prev = if i >= 2 { *gt.rows[i - 2].get(k).unwrap_or(&0) } else { 0 };
            for _ in prev..cur {
                row.push(i as u8);
            }
        }
        rows.push(row);
    }
    Tableau::new(rows, m as u8)
}

// ---------------------------------------------------------------------------
// Crystal operators on rectangular tableaux
// ---------------------------------------------------------------------------

/// Reading order: rows bottom to top, each left to right.
fn reading_boxes(t: &Tableau) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for r in (0..t.rows.len()).rev() {
        for c in 0..t.rows[r].len() {
            out.push((r, c));
        }
    }
    out
}

/// `f_i` on a tableau, `i` a vertex label of `A_{m-1}` (changes an `i` into
/// `i+1` at the box selected by the signature rule).
pub fn tableau_lower(t: &Tableau, i_label: u8) -> Option<Tableau> {
    let boxes = reading_boxes(t);
    let mut pending_minus: Vec<usize> = Vec::new();
    let mut surviving_plus: Vec<usize> = Vec::new();
    for (j, &(r, c)) in boxes.iter().enumerate() {
        let e = t.rows[r][c];
        if e == i_label {
            if pending_minus.pop().is_none() {
                surviving_plus.push(j);
            }
        } else if e == i_label + 1 {
            pending_minus.push(j);
        }
    }
    let &j = surviving_plus.last()?;
    let (r, c) = boxes[j];
    let mut out = t.clone();
    out.rows[r][c] = i_label + 1;
    debug_assert!(out.validate().is_ok(), "lowering broke semistandardness");
    Some(out)
}

/// `e_i` on a tableau (changes an `i+1` back into an `i`).
pub fn tableau_raise(t: &Tableau, i_label: u8) -> Option<Tableau> {
    let boxes = reading_boxes(t);
    let mut pending_minus: Vec<usize> = Vec::new();
    for (j, &(r, c)) in boxes.iter().enumerate() {
        let e = t.rows[r][c];
        if e == i_label {
            pending_minus.pop();
        } else if e == i_label + 1 {
            pending_minus.push(j);
        }
    }
    let &j = pending_minus.first()?;
    let (r, c) = boxes[j];
    let mut out = t.clone();
    out.rows[r][c] = i_label;
    debug_assert!(out.validate().is_ok(), "raising broke semistandardness");
    Some(out)
}

/// Crystal graph on all of `SSYT(n^p)` with entries ≤ m, vertex indices of
/// `A_{m-1}` internal (label = index + 1).
pub fn tableau_crystal_graph(p: usize, n: usize, m: u8) -> CrystalGraph<Tableau> {
    let elems = all_rectangular(p, n, m);
    CrystalGraph::build(
        m as usize - 1,
        elems,
        |t, i| tableau_lower(t, (i + 1) as u8),
        |t, i| tableau_raise(t, (i + 1) as u8),
        |t| t.weight(),
    )
}

// ---------------------------------------------------------------------------
// Rectangular tableaux ↔ RPPs
// ---------------------------------------------------------------------------

/// The heap of `w_0^J` for `A_{m-1}` with `J = {1..m-1} ∖ {p}`: a `p×(m−p)`
/// rectangle.
pub fn rectangle_heap(m: usize, p: usize) -> Result<Arc<Heap>> {
    if !(1..m).contains(&p) {
        return Err(Error::Tableau(format!("need 1 ≤ p < m, got p={p}, m={m}")));
    }
    let d = Arc::new(DynkinDiagram::from_spec(&format!("A{}", m - 1))?);
    let j_set: Vec<usize> = (1..m)
        .filter(|&l| l != p)
        .map(|l| d.index_of(l).unwrap())
        .collect();
    let word = weyl::minimal_coset_rep(&d, &j_set);
    Ok(Arc::new(Heap::build(d, &word)?))
}

/// The ideal crystal `B(ω_p)` on the rectangle heap.
pub fn rectangle_crystal(m: usize, p: usize) -> Result<Arc<IdealCrystal>> {
    let heap = rectangle_heap(m, p)?;
    let d = heap.diagram();
    let witness = d.fundamental_weight(d.index_of(p)?);
    Ok(Arc::new(IdealCrystal::new(heap, witness)))
}

/// Rectangular tableau → RPP on the rectangle heap: the value over the bead
/// `x_i^s` is the GT entry `λ^{(m−i)}_{max(0, p−i) + s}` (vertex labels).
pub fn rpp_of_rectangular_tableau(t: &Tableau, heap: &Heap) -> Result<Rpp> {
    let m = t.max_entry as usize;
    let shape = t.shape();
    let p = shape.len();
    if shape.iter().any(|&len| len != shape[0]) {
        return Err(Error::Tableau("tableau shape is not rectangular".into()));
    }
    let n = if p == 0 { 0 } else { shape[0] };
    let gt = gt_of_tableau(t);
    let mut values = vec![0u8; heap.len()];
    for x in 0..heap.len() {
        let i = heap.diagram().label(heap.runner(x));
        let s = heap.fibre_pos(x) + 1;
        let j = m - i; // GT row, 1-based
        let k = p.saturating_sub(i) + s; // GT column, 1-based
        let v = gt.rows[j - 1][k - 1];
        if v < 0 || v > n as i64 {
            return Err(Error::Internal("GT entry out of RPP range".into()));
        }
        values[x] = v as u8;
    }
    let rpp = Rpp { values, height: n as u8 };
    if !rpp.is_valid(heap) {
        return Err(Error::Internal("tableau did not map to an order-reversing map".into()));
    }
    Ok(rpp)
}

/// Inverse map: rebuild the GT pattern from the RPP, forcing the entries
/// outside the free band to `n` (left of it) or `0` (right of it).
pub fn rectangular_tableau_of_rpp(rpp: &Rpp, heap: &Heap, m: usize, p: usize) -> Result<Tableau> {
    let n = rpp.height as i64;
    let mut rows: Vec<Vec<i64>> = (1..=m).map(|i| vec![-1i64; i]).collect();
    // free band from the heap fibres
    for x in 0..heap.len() {
        let i = heap.diagram().label(heap.runner(x));
        let s = heap.fibre_pos(x) + 1;
        let j = m - i;
        let k = p.saturating_sub(i) + s;
        rows[j - 1][k - 1] = rpp.values[x] as i64;
    }
    // base row and forced entries
    for (j, row) in rows.iter_mut().enumerate() {
        for (k0, slot) in row.iter_mut().enumerate() {
            let k = k0 + 1;
            if *slot >= 0 {
                continue;
            }
            // row j+1 of the triangle describes labels ≤ j+1; columns left of
            // the free band are full (= n), columns right of it are empty
            let i = m as i64 - (j as i64 + 1); // runner label, 0 for the base row
            let lo = if i >= 1 {
                (p as i64 - i).max(0) + 1
            } else {
                // base row: full through column p
                1 + p as i64
            };
            *slot = if (k as i64) < lo || (i < 1 && (k as i64) <= p as i64) { n } else { 0 };
        }
    }
    let gt = GtPattern { rows };
    let t = tableau_of_gt(&gt)?;
    if t.shape() != vec![rpp.height as usize; p] {
        return Err(Error::Internal("reconstructed tableau is not rectangular".into()));
    }
    Ok(t)
}

/// Schützenberger involution on a connected crystal graph, with θ taken from
/// the longest element of the full diagram.
pub fn schuetzenberger<E: Ord + Clone>(
    graph: &CrystalGraph<E>,
    diagram: &DynkinDiagram,
) -> Result<Vec<usize>> {
    let theta: HashMap<usize, usize> = diagram.longest_element_involution();
    graph.schuetzenberger(&theta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gt_example() {
        let t = Tableau::new(vec![vec![1, 1, 3], vec![2, 2, 4]], 4).unwrap();
        let gt = gt_of_tableau(&t);
        assert_eq!(gt.rows[0], vec![2]);
        assert_eq!(gt.rows[1], vec![2, 2]);
        assert_eq!(gt.rows[2], vec![3, 2, 0]);
        assert_eq!(gt.rows[3], vec![3, 3, 0, 0]);
        assert_eq!(tableau_of_gt(&gt).unwrap(), t);
    }

    #[test]
    fn single_box() {
        let t = Tableau::new(vec![vec![1]], 3).unwrap();
        let gt = gt_of_tableau(&t);
        assert_eq!(gt.rows[0], vec![1]);
        assert_eq!(gt.rows[1], vec![1, 0]);
        assert_eq!(gt.rows[2], vec![1, 0, 0]);
        assert_eq!(tableau_of_gt(&gt).unwrap(), t);
    }

    #[test]
    fn roundtrip_all_2x2() {
        let all = all_rectangular(2, 2, 4);
        assert_eq!(all.len(), 20);
        for t in all {
            let gt = gt_of_tableau(&t);
            gt.validate().unwrap();
            assert_eq!(tableau_of_gt(&gt).unwrap(), t);
        }
    }

    #[test]
    fn interlacing_violation_rejected() {
        let gt = GtPattern { rows: vec![vec![2], vec![1, 0]] };
        assert!(tableau_of_gt(&gt).is_err());
    }

    #[test]
    fn crystal_ops_stay_semistandard() {
        for t in all_rectangular(2, 2, 4) {
            for i in 1..4u8 {
                if let Some(l) = tableau_lower(&t, i) {
                    l.validate().unwrap();
                    assert_eq!(tableau_raise(&l, i), Some(t.clone()));
                }
            }
        }
    }

    #[test]
    fn rectangle_bijection_counts() {
        let heap = rectangle_heap(4, 2).unwrap();
        // n = 1: the six tableaux map onto the six ideals of the diamond
        let all1 = all_rectangular(2, 1, 4);
        assert_eq!(all1.len(), 6);
        let mut images: Vec<Vec<u8>> = all1
            .iter()
            .map(|t| rpp_of_rectangular_tableau(t, &heap).unwrap().values)
            .collect();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), 6);
        // n = 2: 20 tableaux onto 20 RPPs, and inverse recovers the tableau
        let all2 = all_rectangular(2, 2, 4);
        assert_eq!(all2.len(), 20);
        for t in &all2 {
            let rpp = rpp_of_rectangular_tableau(t, &heap).unwrap();
            let back = rectangular_tableau_of_rpp(&rpp, &heap, 4, 2).unwrap();
            assert_eq!(&back, t);
        }
    }

    #[test]
    fn highest_tableau_maps_to_lowest_rpp() {
        // the bijection implements the Schützenberger involution, so the
        // highest tableau lands on the all-n (lowest) RPP
        let heap = rectangle_heap(4, 2).unwrap();
        let t = highest_rectangular(2, 2, 4);
        let rpp = rpp_of_rectangular_tableau(&t, &heap).unwrap();
        assert!(rpp.values.iter().all(|&v| v == 2));
    }

    #[test]
    fn twist_intertwines_operators() {
        // Φ ∘ f_i = e_{m−i} ∘ Φ on all of SSYT(n^2), m = 4, n ≤ 2
        let m = 4usize;
        let heap = rectangle_heap(m, 2).unwrap();
        let d = heap.diagram().clone();
        let witness = d.fundamental_weight(d.index_of(2).unwrap());
        let crystal = Arc::new(IdealCrystal::new(heap.clone(), witness));
        for n in 1..=2usize {
            let rc = crate::crystal::RppCrystal::new(crystal.clone(), n as u8);
            for t in all_rectangular(2, n, m as u8) {
                let phi_t = rpp_of_rectangular_tableau(&t, &heap).unwrap();
                for i in 1..m as u8 {
                    let lhs = tableau_lower(&t, i)
                        .map(|ft| rpp_of_rectangular_tableau(&ft, &heap).unwrap());
                    let mirrored = d.index_of(m - i as usize).unwrap();
                    let rhs = rc.raise(&phi_t, mirrored);
                    assert_eq!(lhs, rhs, "n={n} i={i}");
                }
            }
        }
    }

    #[test]
    fn schuetzenberger_on_chain() {
        // B(ω_1) of A_2 is a 3-chain; ξ reverses it
        let g = tableau_crystal_graph(1, 1, 3);
        assert_eq!(g.len(), 3);
        let d = DynkinDiagram::from_spec("A2").unwrap();
        let xi = schuetzenberger(&g, &d).unwrap();
        assert_eq!(xi, vec![2, 1, 0]);
        // involution
        for (k, &v) in xi.iter().enumerate() {
            assert_eq!(xi[v], k);
        }
    }

    #[test]
    fn schuetzenberger_reverses_weights() {
        // wt(ξ b) = w_0 wt(b) on B(ω_2) in A_3: w_0 negates and applies θ
        let g = tableau_crystal_graph(2, 1, 4);
        assert_eq!(g.len(), 6);
        let d = DynkinDiagram::from_spec("A3").unwrap();
        let xi = schuetzenberger(&g, &d).unwrap();
        let theta = d.longest_element_involution();
        for (k, &v) in xi.iter().enumerate() {
            let w = &g.weights[k];
            let expect: Weight =
                (0..3).map(|i| -w[theta[&i]]).collect();
            assert_eq!(g.weights[v], expect);
        }
    }
}
