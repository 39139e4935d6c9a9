//! Weyl group elements as reduced words over a simply-laced diagram.
//!
//! Elements are canonicalized by their inversion sets: we fix the list of
//! positive roots once per diagram and track, for each group element, the
//! signed permutation it induces on that list. Length is then an inversion
//! count and the left weak order is containment of inversion masks, so no
//! normal-form machinery is needed.
//!
//! Words are sequences of internal vertex indices read left to right; the
//! rightmost letter acts first on weights, matching `s_{i_1} ⋯ s_{i_ℓ} λ`.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::dynkin::{DynkinDiagram, Weight};
use crate::{Error, Result};

/// Per-diagram reflection tables on the positive roots.
pub struct RootTables<'d> {
    pub diagram: &'d DynkinDiagram,
    pub positive_roots: Vec<Vec<i64>>,
    /// index of α_i in `positive_roots`
    pub simple_index: Vec<usize>,
    /// `refl[i][k] = ±(k'+1)` meaning `s_i(β_k) = ±β_{k'}`
    refl: Vec<Vec<i32>>,
}

/// Signed permutation of the positive roots; `perm[k] = ±(k'+1)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Elem {
    perm: Vec<i32>,
}

impl<'d> RootTables<'d> {
    pub fn new(diagram: &'d DynkinDiagram) -> Self {
        let positive_roots = diagram.positive_roots();
        assert!(positive_roots.len() <= 128, "inversion masks use u128");
        let index: HashMap<&Vec<i64>, usize> =
            positive_roots.iter().enumerate().map(|(k, r)| (r, k)).collect();
        let n = diagram.rank();
        let mut refl = vec![vec![0i32; positive_roots.len()]; n];
        let mut simple_index = vec![0usize; n];
        for i in 0..n {
            for (k, beta) in positive_roots.iter().enumerate() {
                let image = diagram.reflect_root(i, beta);
                if image.iter().all(|&c| c >= 0) {
                    refl[i][k] = (index[&image] + 1) as i32;
                } else {
                    let neg: Vec<i64> = image.iter().map(|c| -c).collect();
                    refl[i][k] = -((index[&neg] + 1) as i32);
                }
            }
            let mut e = vec![0i64; n];
            e[i] = 1;
            simple_index[i] = index[&e];
        }
        RootTables { diagram, positive_roots, simple_index, refl }
    }

    pub fn identity(&self) -> Elem {
        Elem { perm: (0..self.positive_roots.len()).map(|k| (k + 1) as i32).collect() }
    }

    /// Right multiplication: `w ↦ w s_j`.
    pub fn mul_right(&self, w: &Elem, j: usize) -> Elem {
        let table = &self.refl[j];
        let perm = table
            .iter()
            .map(|&t| {
                let (k, s) = decode(t);
                let (k2, s2) = decode(w.perm[k]);
                encode(k2, s * s2)
            })
            .collect();
        Elem { perm }
    }

    /// Left multiplication: `w ↦ s_i w`.
    pub fn mul_left(&self, i: usize, w: &Elem) -> Elem {
        let table = &self.refl[i];
        let perm = w
            .perm
            .iter()
            .map(|&t| {
                let (k, s) = decode(t);
                let (k2, s2) = decode(table[k]);
                encode(k2, s * s2)
            })
            .collect();
        Elem { perm }
    }

    pub fn element_of_word(&self, word: &[usize]) -> Elem {
        let mut w = self.identity();
        for &j in word {
            w = self.mul_right(&w, j);
        }
        w
    }

    /// Inversion set `{β > 0 : wβ < 0}` as a bitmask.
    pub fn inv_mask(&self, w: &Elem) -> u128 {
        let mut mask = 0u128;
        for (k, &t) in w.perm.iter().enumerate() {
            if t < 0 {
                mask |= 1u128 << k;
            }
        }
        mask
    }

    pub fn length(&self, w: &Elem) -> usize {
        w.perm.iter().filter(|&&t| t < 0).count()
    }

    /// `ℓ(w s_j) > ℓ(w)`, i.e. appending `j` keeps the word reduced.
    pub fn extends_right(&self, w: &Elem, j: usize) -> bool {
        w.perm[self.simple_index[j]] > 0
    }

    /// Right descent: `w s_i < w`.
    pub fn right_descent(&self, w: &Elem, i: usize) -> bool {
        w.perm[self.simple_index[i]] < 0
    }

    /// Left descent: `s_i w < w`, i.e. `w^{-1}(α_i) < 0`.
    pub fn left_descent(&self, w: &Elem, i: usize) -> bool {
        let target = -((self.simple_index[i] + 1) as i32);
        w.perm.iter().any(|&t| t == target)
    }
}

fn decode(t: i32) -> (usize, i32) {
    if t > 0 {
        ((t - 1) as usize, 1)
    } else {
        ((-t - 1) as usize, -1)
    }
}

fn encode(k: usize, s: i32) -> i32 {
    s * (k + 1) as i32
}

// ---------------------------------------------------------------------------
// Word-level predicates
// ---------------------------------------------------------------------------

/// Parse a comma-separated list of vertex labels into internal indices.
pub fn parse_word(d: &DynkinDiagram, s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            let label: usize = tok
                .trim()
                .parse()
                .map_err(|_| Error::Word(format!("bad letter {tok:?}")))?;
            d.index_of(label).map_err(|_| Error::Word(format!("letter {label} is not a vertex")))
        })
        .collect()
}

/// Render a word as comma-separated vertex labels.
pub fn word_string(d: &DynkinDiagram, word: &[usize]) -> String {
    word.iter().map(|&i| d.label(i).to_string()).collect::<Vec<_>>().join(",")
}

pub fn is_reduced(tables: &RootTables, word: &[usize]) -> bool {
    let w = tables.element_of_word(word);
    tables.length(&w) == word.len()
}

/// Exhaustive commutation-class search. Returns `Ok(true)` iff no word in the
/// class contains a factor `s_i s_j s_i` with `i, j` adjacent.
pub fn is_fully_commutative(d: &DynkinDiagram, word: &[usize]) -> Result<bool> {
    const CLASS_BOUND: usize = 1 << 20;
    let has_braid = |w: &[usize]| {
        w.windows(3).any(|t| t[0] == t[2] && d.adjacent(t[0], t[1]))
    };
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut queue: VecDeque<Vec<usize>> = VecDeque::new();
    seen.insert(word.to_vec());
    queue.push_back(word.to_vec());
    while let Some(w) = queue.pop_front() {
        if has_braid(&w) {
            return Ok(false);
        }
        for k in 0..w.len().saturating_sub(1) {
            let (a, b) = (w[k], w[k + 1]);
            if a != b && !d.adjacent(a, b) {
                let mut swapped = w.clone();
                swapped.swap(k, k + 1);
                if seen.insert(swapped.clone()) {
                    if seen.len() > CLASS_BOUND {
                        return Err(Error::Bounds(
                            "commutation class exceeds enumeration bound".into(),
                        ));
                    }
                    queue.push_back(swapped);
                }
            }
        }
    }
    Ok(true)
}

/// `⟨α_{i_k}^∨, s_{i_{k+1}} ⋯ s_{i_ℓ} λ⟩ = 1` for all k.
pub fn is_lambda_minuscule(d: &DynkinDiagram, word: &[usize], lambda: &Weight) -> bool {
    let mut mu = lambda.clone();
    for &i in word.iter().rev() {
        if d.pairing(i, &mu) != 1 {
            return false;
        }
        mu = d.reflect_weight(i, &mu);
    }
    true
}

/// Between every pair of consecutive occurrences of a generator there are
/// exactly two letters that do not commute with it.
pub fn is_minuscule_word(d: &DynkinDiagram, word: &[usize]) -> bool {
    for (a, &i) in word.iter().enumerate() {
        let Some(off) = word[a + 1..].iter().position(|&x| x == i) else { continue };
        let b = a + 1 + off;
        let noncomm = word[a + 1..b].iter().filter(|&&x| d.adjacent(x, i)).count();
        if noncomm != 2 {
            return false;
        }
    }
    true
}

/// Minuscule, and the last occurrence of each generator is followed by at
/// most one letter that does not commute with it.
pub fn is_dominant_minuscule_word(d: &DynkinDiagram, word: &[usize]) -> bool {
    if !is_minuscule_word(d, word) {
        return false;
    }
    let mut seen_after: HashSet<usize> = HashSet::new();
    for k in (0..word.len()).rev() {
        let i = word[k];
        if seen_after.contains(&i) {
            continue;
        }
        // k is the last occurrence of i
        let noncomm = word[k + 1..].iter().filter(|&&x| d.adjacent(x, i)).count();
        if noncomm > 1 {
            return false;
        }
        seen_after.insert(i);
    }
    true
}

/// Minimal dominant weight `λ_min = Σ_{w s_i < w} ω_i` of the word's element.
pub fn lambda_min(tables: &RootTables, word: &[usize]) -> Weight {
    let w = tables.element_of_word(word);
    lambda_min_of_elem(tables, &w)
}

/// Minimal witness and the cone of free directions `I ∖ I'`.
pub fn witnesses(
    tables: &RootTables,
    word: &[usize],
) -> Result<(Weight, Vec<usize>)> {
    let d = tables.diagram;
    if !is_dominant_minuscule_word(d, word) {
        return Err(Error::Word("word is not dominant minuscule".into()));
    }
    let lmin = lambda_min(tables, word);
    debug_assert!(is_lambda_minuscule(d, word, &lmin));
    let used: HashSet<usize> = word.iter().copied().collect();
    let free: Vec<usize> = (0..d.rank()).filter(|i| !used.contains(i)).collect();
    Ok((lmin, free))
}

/// Reduced word for `w_0^J`, the maximal element of `W^J`: the minimal `w`
/// with `wλ = w_0 λ` for `λ = Σ_{j∉J} ω_j`. Computed by walking the orbit of
/// λ down to its antidominant extreme, smallest vertex label first.
pub fn minimal_coset_rep(d: &DynkinDiagram, j_set: &[usize]) -> Vec<usize> {
    let jset: HashSet<usize> = j_set.iter().copied().collect();
    let mut lambda = d.zero_weight();
    for i in 0..d.rank() {
        if !jset.contains(&i) {
            lambda[i] = 1;
        }
    }
    let mut order: Vec<usize> = (0..d.rank()).collect();
    order.sort_by_key(|&i| d.label(i));
    let mut steps = Vec::new();
    loop {
        let Some(&i) = order.iter().find(|&&i| lambda[i] > 0) else { break };
        lambda = d.reflect_weight(i, &lambda);
        steps.push(i);
    }
    steps.reverse();
    steps
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// Visit every reduced word of length ≤ `max_len` exactly once, together
/// with the signed root permutation of its element.
pub fn for_each_reduced_word<F: FnMut(&[usize], &Elem)>(
    d: &DynkinDiagram,
    max_len: usize,
    mut f: F,
) {
    let tables = RootTables::new(d);
    let mut word = Vec::new();
    let id = tables.identity();
    walk(&tables, &mut word, &id, max_len, &mut f);

    fn walk<F: FnMut(&[usize], &Elem)>(
        tables: &RootTables,
        word: &mut Vec<usize>,
        w: &Elem,
        max_len: usize,
        f: &mut F,
    ) {
        f(word, w);
        if word.len() == max_len {
            return;
        }
        for j in 0..tables.diagram.rank() {
            if tables.extends_right(w, j) {
                let next = tables.mul_right(w, j);
                word.push(j);
                walk(tables, word, &next, max_len, f);
                word.pop();
            }
        }
    }
}

/// `λ_min` read directly from an element's right descents.
pub fn lambda_min_of_elem(tables: &RootTables, w: &Elem) -> Weight {
    let d = tables.diagram;
    let mut out = d.zero_weight();
    for i in 0..d.rank() {
        if tables.right_descent(w, i) {
            out[i] = 1;
        }
    }
    out
}

/// One canonical reduced word per dominant minuscule element of length ≤
/// `max_len`, deduplicated by inversion set, BFS order.
pub fn dominant_minuscule_elements(d: &DynkinDiagram, max_len: usize) -> Vec<Vec<usize>> {
    let tables = RootTables::new(d);
    let mut seen: HashSet<u128> = HashSet::new();
    let mut frontier: Vec<(Elem, Vec<usize>)> = vec![(tables.identity(), Vec::new())];
    seen.insert(0);
    let mut out = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (w, word) in &frontier {
            for j in 0..d.rank() {
                if tables.extends_right(w, j) {
                    let w2 = tables.mul_right(w, j);
                    let mask = tables.inv_mask(&w2);
                    if seen.insert(mask) {
                        let mut word2 = word.clone();
                        word2.push(j);
                        next.push((w2, word2));
                    }
                }
            }
        }
        for (_, word) in &next {
            if is_dominant_minuscule_word(d, word) {
                out.push(word.clone());
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    out.retain(|w| !w.is_empty());
    out
}

/// Reduced words for every minimal coset representative in `W^J`, i.e. the
/// lower weak-order interval of `w_0^J`, BFS upward from the identity.
/// Serialized for the coset-table JSON interface.
pub fn coset_table(d: &DynkinDiagram, j_set: &[usize], max_size: usize) -> Result<Vec<Vec<usize>>> {
    let tables = RootTables::new(d);
    let top = tables.element_of_word(&minimal_coset_rep(d, j_set));
    let top_mask = tables.inv_mask(&top);
    let mut seen: HashSet<u128> = HashSet::new();
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut frontier: Vec<(Elem, Vec<usize>)> = vec![(tables.identity(), Vec::new())];
    seen.insert(0);
    out.push(Vec::new());
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (v, word) in &frontier {
            for i in 0..d.rank() {
                if !tables.left_descent(v, i) {
                    let up = tables.mul_left(i, v);
                    let mask = tables.inv_mask(&up);
                    if mask & !top_mask == 0 && seen.insert(mask) {
                        let mut w2 = Vec::with_capacity(word.len() + 1);
                        w2.push(i);
                        w2.extend_from_slice(word);
                        out.push(w2.clone());
                        next.push((up, w2));
                        if out.len() > max_size {
                            return Err(Error::Bounds(format!(
                                "|W^J| exceeds the bound {max_size}"
                            )));
                        }
                    }
                }
            }
        }
        frontier = next;
    }
    out.sort_by_key(|w| (w.len(), w.clone()));
    Ok(out)
}

/// Inversion masks of all `v ≤_L w`, BFS downward from `w`.
pub fn weak_order_below(tables: &RootTables, word: &[usize]) -> Vec<u128> {
    let d = tables.diagram;
    let w = tables.element_of_word(word);
    let mut seen: HashSet<u128> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(tables.inv_mask(&w));
    queue.push_back(w);
    while let Some(u) = queue.pop_front() {
        for i in 0..d.rank() {
            if tables.left_descent(&u, i) {
                let v = tables.mul_left(i, &u);
                if seen.insert(tables.inv_mask(&v)) {
                    queue.push_back(v);
                }
            }
        }
    }
    let mut out: Vec<u128> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(spec: &str) -> DynkinDiagram {
        DynkinDiagram::from_spec(spec).unwrap()
    }

    #[test]
    fn reduced_words() {
        let a2 = d("A2");
        let t = RootTables::new(&a2);
        assert!(is_reduced(&t, &parse_word(&a2, "1,2,1").unwrap()));
        assert!(!is_reduced(&t, &parse_word(&a2, "1,1").unwrap()));
        let a4 = d("A4");
        let t = RootTables::new(&a4);
        let w = parse_word(&a4, "3,4,2,3,1,2").unwrap();
        assert!(is_reduced(&t, &w));
        assert_eq!(t.length(&t.element_of_word(&w)), 6);
    }

    #[test]
    fn fully_commutative() {
        let a3 = d("A3");
        assert!(is_fully_commutative(&a3, &parse_word(&a3, "2,1,3,2").unwrap()).unwrap());
        let a2 = d("A2");
        assert!(!is_fully_commutative(&a2, &parse_word(&a2, "1,2,1").unwrap()).unwrap());
        let a4 = d("A4");
        assert!(is_fully_commutative(&a4, &parse_word(&a4, "3,4,2,3,1,2").unwrap()).unwrap());
    }

    #[test]
    fn minuscule_tests() {
        let d4 = d("D4");
        let w = parse_word(&d4, "2,1,3,4,2").unwrap();
        assert!(!is_minuscule_word(&d4, &w));
        let d5 = d("D5");
        let w = parse_word(&d5, "5,3,2,4,1,3,2,5,3,4").unwrap();
        assert!(is_dominant_minuscule_word(&d5, &w));
        let a4 = d("A4");
        let w = parse_word(&a4, "3,4,2,3,1,2").unwrap();
        assert!(is_dominant_minuscule_word(&a4, &w));
        let t = RootTables::new(&a4);
        assert!(is_lambda_minuscule(&a4, &w, &lambda_min(&t, &w)));
    }

    #[test]
    fn witness_examples() {
        let d4 = d("D4");
        let t = RootTables::new(&d4);
        let w = parse_word(&d4, "1,3,4,2").unwrap();
        let (lmin, free) = witnesses(&t, &w).unwrap();
        assert_eq!(lmin, vec![0, 1, 0, 0]);
        assert!(free.is_empty());
        let a3 = d("A3");
        let t = RootTables::new(&a3);
        let w = parse_word(&a3, "2,3,1,2").unwrap();
        let (lmin, _) = witnesses(&t, &w).unwrap();
        assert_eq!(lmin, vec![0, 1, 0]);
    }

    #[test]
    fn coset_reps() {
        let a3 = d("A3");
        let t = RootTables::new(&a3);
        let j: Vec<usize> = vec![a3.index_of(1).unwrap(), a3.index_of(3).unwrap()];
        let w = minimal_coset_rep(&a3, &j);
        assert_eq!(w.len(), 4);
        let expected = parse_word(&a3, "2,3,1,2").unwrap();
        assert_eq!(
            t.inv_mask(&t.element_of_word(&w)),
            t.inv_mask(&t.element_of_word(&expected))
        );
        // J = I gives the identity
        let all: Vec<usize> = (0..3).collect();
        assert!(minimal_coset_rep(&a3, &all).is_empty());
        // A4, J = {1,3,4}
        let a4 = d("A4");
        let t4 = RootTables::new(&a4);
        let j: Vec<usize> = [1, 3, 4].iter().map(|&l| a4.index_of(l).unwrap()).collect();
        let w = minimal_coset_rep(&a4, &j);
        assert_eq!(w.len(), 6);
        let expected = parse_word(&a4, "3,4,2,3,1,2").unwrap();
        assert_eq!(
            t4.inv_mask(&t4.element_of_word(&w)),
            t4.inv_mask(&t4.element_of_word(&expected))
        );
    }

    #[test]
    fn reflection_involution_property() {
        let d5 = d("D5");
        let t = RootTables::new(&d5);
        // s_i s_i = e as signed root permutations
        for i in 0..5 {
            let e = t.mul_right(&t.mul_right(&t.identity(), i), i);
            assert_eq!(t.length(&e), 0);
            assert!(e == t.identity());
        }
    }

    #[test]
    fn weak_order_counts() {
        // |{v ≤_L w_0}| = |W| for A_2
        let a2 = d("A2");
        let t = RootTables::new(&a2);
        let w0 = parse_word(&a2, "1,2,1").unwrap();
        assert_eq!(weak_order_below(&t, &w0).len(), 6);
    }

    #[test]
    fn coset_tables() {
        let a3 = d("A3");
        // W^{J} for J = {1,3}: six representatives, all without right
        // descents in J
        let j: Vec<usize> = vec![0, 2];
        let reps = coset_table(&a3, &j, 10_000).unwrap();
        assert_eq!(reps.len(), 6);
        let t = RootTables::new(&a3);
        for w in &reps {
            let v = t.element_of_word(w);
            assert_eq!(t.length(&v), w.len());
            for &jj in &j {
                assert!(!t.right_descent(&v, jj));
            }
        }
        // bound enforcement
        assert!(coset_table(&a3, &[], 3).is_err());
    }

    #[test]
    fn dominant_minuscule_enumeration_small() {
        let a2 = d("A2");
        let elems = dominant_minuscule_elements(&a2, 3);
        // nonempty fully commutative elements of A2: s1, s2, s12, s21 — all
        // dominant minuscule; the braid word s121 is not
        assert_eq!(elems.len(), 4);
    }
}
