//! Heaps of fully commutative words: the labelled poset on the letters of a
//! reduced word, order ideals, level, good drop orders, and the 4-colouring
//! of covering relations that later fixes the signs of the module arrows.
//!
//! Elements are canonically identified by (runner, position within the
//! runner's fibre counted from the bottom), so rebuilding the heap from any
//! commutation-equivalent word produces an identical structure.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dynkin::{DynkinDiagram, TwoColouring};
use crate::weyl;
use crate::{Error, Result};

/// Order ideal as a bitmask over canonical heap element indices.
pub type IdealMask = u64;

#[derive(Clone)]
pub struct Heap {
    diagram: Arc<DynkinDiagram>,
    /// canonical word: reverse of the level-sorted linear extension
    word: Vec<usize>,
    runner: Vec<usize>,
    level: Vec<usize>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    fibres: Vec<Vec<usize>>,
    fibre_pos: Vec<usize>,
    /// downset[x] = mask of {y : y ≤ x}, including x
    downset: Vec<IdealMask>,
}

impl std::fmt::Debug for Heap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Heap")
            .field("word", &weyl::word_string(&self.diagram, &self.word))
            .field("runner", &self.runner)
            .field("level", &self.level)
            .field("covers", &self.covers())
            .finish()
    }
}

impl Heap {
    /// Build the heap of a reduced, fully commutative word.
    pub fn build(diagram: Arc<DynkinDiagram>, word: &[usize]) -> Result<Self> {
        let len = word.len();
        if len > 64 {
            return Err(Error::Bounds("heap size is limited to 64 elements".into()));
        }
        let tables = weyl::RootTables::new(&diagram);
        if !weyl::is_reduced(&tables, word) {
            return Err(Error::Word(format!(
                "word {} is not reduced",
                weyl::word_string(&diagram, word)
            )));
        }
        if !weyl::is_fully_commutative(&diagram, word)? {
            return Err(Error::Word(format!(
                "word {} is not fully commutative; its heap would depend on the chosen word",
                weyl::word_string(&diagram, word)
            )));
        }

        // positions: index into `word`; larger position = applied earlier = lower
        let mut pos_downset = vec![0u64; len];
        for b in (0..len).rev() {
            pos_downset[b] |= 1 << b;
            for a in b + 1..len {
                if diagram.adjacent(word[a], word[b]) {
                    pos_downset[b] |= pos_downset[a];
                }
            }
        }
        let lt = |a: usize, b: usize| a != b && pos_downset[b] & (1 << a) != 0;

        // covers in position space
        let mut pos_down: Vec<Vec<usize>> = vec![Vec::new(); len];
        for b in 0..len {
            for a in 0..len {
                if lt(a, b) {
                    let strictly_between =
                        (0..len).any(|c| c != a && c != b && lt(a, c) && lt(c, b));
                    if !strictly_between {
                        pos_down[b].push(a);
                    }
                }
            }
        }

        // level = longest chain from the bottom
        let mut pos_level = vec![0usize; len];
        let mut order: Vec<usize> = (0..len).collect();
        order.sort_by_key(|&p| u64::count_ones(pos_downset[p]));
        for &p in &order {
            pos_level[p] =
                1 + pos_down[p].iter().map(|&a| pos_level[a]).max().unwrap_or(0);
        }

        // canonical relabel by (runner, position within fibre from the bottom)
        let mut fibre_members: HashMap<usize, Vec<usize>> = HashMap::new();
        for p in 0..len {
            fibre_members.entry(word[p]).or_default().push(p);
        }
        for members in fibre_members.values_mut() {
            // bottom of a fibre = rightmost occurrence = larger position
            members.sort_by(|&a, &b| b.cmp(&a));
            // fibres must be chains
            for w in members.windows(2) {
                if !lt(w[0], w[1]) {
                    return Err(Error::Internal(
                        "runner fibre is not totally ordered".into(),
                    ));
                }
            }
        }
        let mut canon_of_pos = vec![0usize; len];
        let mut runner = Vec::with_capacity(len);
        let mut fibre_pos = vec![0usize; len];
        let mut fibres = vec![Vec::new(); diagram.rank()];
        let mut next = 0usize;
        for v in 0..diagram.rank() {
            if let Some(members) = fibre_members.get(&v) {
                for (s, &p) in members.iter().enumerate() {
                    canon_of_pos[p] = next;
                    runner.push(v);
                    fibre_pos[next] = s;
                    fibres[v].push(next);
                    next += 1;
                }
            }
        }

        let remap_mask = |m: u64| -> u64 {
            let mut out = 0u64;
            for p in 0..len {
                if m & (1 << p) != 0 {
                    out |= 1 << canon_of_pos[p];
                }
            }
            out
        };
        let mut level = vec![0usize; len];
        let mut downset = vec![0u64; len];
        let mut down: Vec<Vec<usize>> = vec![Vec::new(); len];
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); len];
        for p in 0..len {
            let x = canon_of_pos[p];
            level[x] = pos_level[p];
            downset[x] = remap_mask(pos_downset[p]);
            down[x] = pos_down[p].iter().map(|&a| canon_of_pos[a]).collect();
            down[x].sort_unstable();
        }
        for x in 0..len {
            for &y in &down[x] {
                up[y].push(x);
            }
        }
        for u in up.iter_mut() {
            u.sort_unstable();
        }

        // canonical word: reverse of the (level, index)-sorted linear extension
        let mut ext: Vec<usize> = (0..len).collect();
        ext.sort_by_key(|&x| (level[x], x));
        let word: Vec<usize> = ext.iter().rev().map(|&x| runner[x]).collect();

        Ok(Heap { diagram, word, runner, level, up, down, fibres, fibre_pos, downset })
    }

    pub fn diagram(&self) -> &Arc<DynkinDiagram> {
        &self.diagram
    }

    pub fn len(&self) -> usize {
        self.runner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.runner.is_empty()
    }

    /// Canonical reduced word (a linear extension read top to bottom).
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn runner(&self, x: usize) -> usize {
        self.runner[x]
    }

    pub fn level(&self, x: usize) -> usize {
        self.level[x]
    }

    /// Elements of `H(w)_i`, bottom to top.
    pub fn fibre(&self, vertex: usize) -> &[usize] {
        &self.fibres[vertex]
    }

    /// Position of `x` within its fibre, 0-based from the bottom.
    pub fn fibre_pos(&self, x: usize) -> usize {
        self.fibre_pos[x]
    }

    pub fn covers_above(&self, x: usize) -> &[usize] {
        &self.up[x]
    }

    pub fn covers_below(&self, x: usize) -> &[usize] {
        &self.down[x]
    }

    /// Covering pairs `(lower, upper)`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            for &y in &self.down[x] {
                out.push((y, x));
            }
        }
        out.sort_unstable();
        out
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.downset[b] & (1 << a) != 0
    }

    pub fn full_mask(&self) -> IdealMask {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    pub fn is_ideal(&self, mask: IdealMask) -> bool {
        (0..self.len())
            .filter(|&x| mask & (1 << x) != 0)
            .all(|x| self.down[x].iter().all(|&y| mask & (1 << y) != 0))
    }

    /// All order ideals, sorted by (size, lexicographic membership).
    pub fn order_ideals(&self, max_count: usize) -> Result<Vec<IdealMask>> {
        let mut ext: Vec<usize> = (0..self.len()).collect();
        ext.sort_by_key(|&x| (self.level[x], x));
        let mut out: Vec<IdealMask> = Vec::new();
        let mut stack: Vec<(usize, IdealMask)> = vec![(0, 0)];
        while let Some((k, mask)) = stack.pop() {
            if k == ext.len() {
                out.push(mask);
                if out.len() > max_count {
                    return Err(Error::Bounds(format!(
                        "more than {max_count} order ideals; raise the bound or stream"
                    )));
                }
                continue;
            }
            let x = ext[k];
            stack.push((k + 1, mask));
            if self.down[x].iter().all(|&y| mask & (1 << y) != 0) {
                stack.push((k + 1, mask | (1 << x)));
            }
        }
        out.sort_by(|&a, &b| ideal_order_key(a).cmp(&ideal_order_key(b)));
        Ok(out)
    }

    /// A drop order (bottom to top) in which every bead lands in good order:
    /// level by level, taking within each level the lexicographically first
    /// order such that a bead covering two beads never finds both of them
    /// already covered by an earlier bead of the same level.
    pub fn good_order(&self) -> Result<Vec<usize>> {
        let max_level = self.level.iter().copied().max().unwrap_or(0);
        let mut order = Vec::with_capacity(self.len());
        for k in 1..=max_level {
            let nodes: Vec<usize> =
                (0..self.len()).filter(|&x| self.level[x] == k).collect();
            let mut chosen: Vec<usize> = Vec::with_capacity(nodes.len());
            let mut used = vec![false; nodes.len()];
            let mut consumed = 0u64; // level k−1 beads covered by chosen beads
            if !Self::order_level(self, &nodes, &mut used, &mut chosen, &mut consumed) {
                return Err(Error::Heap(
                    "no good drop order exists at this level; heap is not minuscule".into(),
                ));
            }
            order.extend(chosen);
        }
        debug_assert!(self.validate_good_order(&order));
        Ok(order)
    }

    fn order_level(
        heap: &Heap,
        nodes: &[usize],
        used: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        consumed: &mut u64,
    ) -> bool {
        if chosen.len() == nodes.len() {
            return true;
        }
        for (t, &b) in nodes.iter().enumerate() {
            if used[t] {
                continue;
            }
            let down = heap.covers_below(b);
            let blocked = down.len() == 2
                && down.iter().all(|&y| *consumed & (1 << y) != 0);
            if blocked || down.len() > 2 {
                continue;
            }
            used[t] = true;
            chosen.push(b);
            let saved = *consumed;
            for &y in down {
                *consumed |= 1 << y;
            }
            if Self::order_level(heap, nodes, used, chosen, consumed) {
                return true;
            }
            *consumed = saved;
            chosen.pop();
            used[t] = false;
        }
        false
    }

    /// Every dropped bead covers at most one already-dropped bead, or covers
    /// two of which at least one is maximal among the already-dropped.
    pub fn validate_good_order(&self, order: &[usize]) -> bool {
        if order.len() != self.len() {
            return false;
        }
        let mut dropped = 0u64;
        for &x in order {
            if self.down[x].iter().any(|&y| dropped & (1 << y) == 0) {
                return false; // linear extension violated
            }
            if self.down[x].len() == 2 {
                let maximal = self.down[x].iter().any(|&y| {
                    (0..self.len())
                        .all(|z| dropped & (1 << z) == 0 || !self.le(y, z) || y == z)
                });
                if !maximal {
                    return false;
                }
            } else if self.down[x].len() > 2 {
                return false;
            }
            dropped |= 1 << x;
        }
        true
    }
}

fn ideal_order_key(mask: IdealMask) -> (u32, Vec<usize>) {
    let members: Vec<usize> = (0..64).filter(|&x| mask & (1 << x) != 0).collect();
    (mask.count_ones(), members)
}

/// List the members of an ideal mask.
pub fn ideal_members(mask: IdealMask) -> Vec<usize> {
    (0..64).filter(|&x| mask & (1 << x) != 0).collect()
}

// ---------------------------------------------------------------------------
// 4-colouring of covering relations
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum EdgeColour {
    R,
    B,
    G,
    Y,
}

impl EdgeColour {
    /// Sign source for the module arrows: R ↦ −1, the rest ↦ +1.
    pub fn sign(self) -> i64 {
        match self {
            EdgeColour::R => -1,
            _ => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            EdgeColour::R => "R",
            EdgeColour::B => "B",
            EdgeColour::G => "G",
            EdgeColour::Y => "Y",
        }
    }
}

/// Colouring of the covering relations, keyed by `(lower, upper)`.
#[derive(Clone, Debug)]
pub struct EdgeColouring {
    pub colour: HashMap<(usize, usize), EdgeColour>,
}

/// Pair of admissible colours for downward edges out of a bead whose runner
/// has 2-colour `c`.
fn pair_for(c: i8) -> [EdgeColour; 2] {
    if c == -1 {
        [EdgeColour::R, EdgeColour::B]
    } else {
        [EdgeColour::G, EdgeColour::Y]
    }
}

/// Construct a 4-colouring along a good drop order, choosing the smallest
/// admissible colours at each step. `prefer_swap` flips the preference order
/// within each pair, which is enough to produce distinct valid colourings.
///
/// Distinctness at a target bead is waived when that bead has three covers:
/// such beads are the top of their runner, never sit at the bottom of a
/// diamond, and the relation is insensitive to their upward colours.
pub fn four_colouring_with(
    heap: &Heap,
    colouring: &TwoColouring,
    prefer_swap: bool,
) -> Result<EdgeColouring> {
    let order = heap.good_order()?;
    let mut colour: HashMap<(usize, usize), EdgeColour> = HashMap::new();
    let incident = |colour: &HashMap<(usize, usize), EdgeColour>, y: usize| -> Vec<EdgeColour> {
        let mut used = Vec::new();
        for (&(a, b), &c) in colour.iter() {
            if a == y || b == y {
                used.push(c);
            }
        }
        used
    };
    for &x in &order {
        let c = colouring.colour[heap.runner(x)];
        let mut pair = pair_for(c);
        if prefer_swap {
            pair.swap(0, 1);
        }
        let targets: Vec<usize> = heap.covers_below(x).to_vec();
        if targets.len() > 2 {
            return Err(Error::Heap("bead covers more than two beads".into()));
        }
        let allowed: Vec<Vec<EdgeColour>> = targets
            .iter()
            .map(|&y| {
                if heap.covers_above(y).len() >= 3 {
                    pair.to_vec()
                } else {
                    let used = incident(&colour, y);
                    pair.iter().copied().filter(|c| !used.contains(c)).collect()
                }
            })
            .collect();
        // at most two edges: scan assignments in preference order
        let assignment: Option<Vec<EdgeColour>> = match targets.len() {
            0 => Some(Vec::new()),
            1 => allowed[0].first().map(|&c| vec![c]),
            2 => {
                let mut found = None;
                'search: for &c0 in &allowed[0] {
                    for &c1 in &allowed[1] {
                        if c0 != c1 {
                            found = Some(vec![c0, c1]);
                            break 'search;
                        }
                    }
                }
                found
            }
            _ => None,
        };
        let assignment = assignment.ok_or_else(|| {
            Error::Internal(format!("no admissible colours for the covers of bead {x}"))
        })?;
        for (&y, &c) in targets.iter().zip(&assignment) {
            colour.insert((y, x), c);
        }
    }
    let out = EdgeColouring { colour };
    validate_colouring(heap, colouring, &out)?;
    Ok(out)
}

pub fn four_colouring(heap: &Heap, colouring: &TwoColouring) -> Result<EdgeColouring> {
    four_colouring_with(heap, colouring, false)
}

/// Check the three defining properties of the edge colouring.
pub fn validate_colouring(
    heap: &Heap,
    two: &TwoColouring,
    ec: &EdgeColouring,
) -> Result<()> {
    let covers = heap.covers();
    if covers.len() != ec.colour.len() || covers.iter().any(|e| !ec.colour.contains_key(e)) {
        return Err(Error::Heap("colouring does not cover exactly the covers".into()));
    }
    // 1: edges at a common element have distinct colours; upward edges are
    // exempt at beads with three covers (top-of-runner beads at a trivalent
    // vertex, which never close a diamond)
    for x in 0..heap.len() {
        let mut used: Vec<EdgeColour> = heap
            .covers_below(x)
            .iter()
            .map(|&y| ec.colour[&(y, x)])
            .collect();
        if heap.covers_above(x).len() < 3 {
            used.extend(heap.covers_above(x).iter().map(|&z| ec.colour[&(x, z)]));
        }
        let mut sorted = used.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != used.len() {
            return Err(Error::Heap(format!(
                "element {x} touches two edges of the same colour"
            )));
        }
    }
    // 2: downward edges of x live in the pair fixed by the 2-colouring
    for (&(_, x), &c) in ec.colour.iter() {
        let pair = pair_for(two.colour[heap.runner(x)]);
        if !pair.contains(&c) {
            return Err(Error::Heap(format!(
                "downward edge of {x} coloured {} outside its pair",
                c.as_str()
            )));
        }
    }
    // 3: diamonds carry four distinct colours
    for x in 0..heap.len() {
        let below = heap.covers_below(x);
        for (ai, &y1) in below.iter().enumerate() {
            for &y2 in &below[ai + 1..] {
                for &z in heap.covers_below(y1) {
                    if heap.covers_below(y2).contains(&z) {
                        let mut cols = [
                            ec.colour[&(y1, x)],
                            ec.colour[&(y2, x)],
                            ec.colour[&(z, y1)],
                            ec.colour[&(z, y2)],
                        ];
                        cols.sort();
                        if cols != [EdgeColour::R, EdgeColour::B, EdgeColour::G, EdgeColour::Y] {
                            return Err(Error::Heap(format!(
                                "diamond {z} < {y1},{y2} < {x} is not 4-coloured"
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

/// JSON shape of a heap: runners as vertex labels, covers as (lower, upper)
/// pairs over canonical element indices, levels per element.
#[derive(Serialize, Deserialize)]
pub struct HeapJson {
    pub runner: Vec<usize>,
    pub covers: Vec<(usize, usize)>,
    pub level: Vec<usize>,
}

pub fn heap_to_json(heap: &Heap) -> HeapJson {
    HeapJson {
        runner: (0..heap.len()).map(|x| heap.diagram().label(heap.runner(x))).collect(),
        covers: heap.covers(),
        level: (0..heap.len()).map(|x| heap.level(x)).collect(),
    }
}

/// DOT export of the Hasse diagram; edges carry their colour when given.
pub fn heap_to_dot(heap: &Heap, colours: Option<&EdgeColouring>) -> String {
    let mut out = String::from("digraph heap {\n  rankdir=BT;\n");
    for x in 0..heap.len() {
        out.push_str(&format!(
            "  n{x} [label=\"{}^{}\"];\n",
            heap.diagram().label(heap.runner(x)),
            heap.fibre_pos(x) + 1
        ));
    }
    for (y, x) in heap.covers() {
        let attr = match colours.and_then(|ec| ec.colour.get(&(y, x))) {
            Some(c) => {
                let dot = match c {
                    EdgeColour::R => "red",
                    EdgeColour::B => "blue",
                    EdgeColour::G => "green",
                    EdgeColour::Y => "gold",
                };
                format!(" [color={dot},label={}]", c.as_str())
            }
            None => String::new(),
        };
        out.push_str(&format!("  n{y} -> n{x}{attr};\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::two_colour_and_orient;

    fn heap_of(spec: &str, word: &str) -> Heap {
        let d = Arc::new(DynkinDiagram::from_spec(spec).unwrap());
        let w = weyl::parse_word(&d, word).unwrap();
        Heap::build(d, &w).unwrap()
    }

    #[test]
    fn fig_one_heap() {
        let h = heap_of("A4", "3,4,2,3,1,2");
        assert_eq!(h.len(), 6);
        let sizes: Vec<usize> = (0..4).map(|v| h.fibre(v).len()).collect();
        assert_eq!(sizes, vec![1, 2, 2, 1]);
        // the bottom bead on runner 2 has level 1
        let bottom = h.fibre(1)[0];
        assert_eq!(h.level(bottom), 1);
        // levels 1..4 with covers raising level by one
        for (y, x) in h.covers() {
            assert_eq!(h.level(x), h.level(y) + 1);
        }
    }

    #[test]
    fn diamond_heap() {
        let h = heap_of("A3", "2,3,1,2");
        assert_eq!(h.len(), 4);
        let top = h.fibre(1)[1];
        let bottom = h.fibre(1)[0];
        assert_eq!(h.covers_below(top).len(), 2);
        assert_eq!(h.covers_above(bottom).len(), 2);
        assert_eq!(h.order_ideals(100).unwrap().len(), 6);
    }

    #[test]
    fn single_letter() {
        let h = heap_of("A3", "2");
        assert_eq!(h.len(), 1);
        assert!(h.covers().is_empty());
        assert_eq!(h.level(0), 1);
    }

    #[test]
    fn chain_ideals() {
        // heap of (1,2,3) in A3 is a 3-chain; a chain of length 3 has 4 ideals
        let h = heap_of("A3", "1,2,3");
        assert_eq!(h.order_ideals(100).unwrap().len(), 4);
    }

    #[test]
    fn empty_heap() {
        let d = Arc::new(DynkinDiagram::from_spec("A2").unwrap());
        let h = Heap::build(d, &[]).unwrap();
        assert_eq!(h.order_ideals(10).unwrap(), vec![0]);
    }

    #[test]
    fn non_fc_rejected() {
        let d = Arc::new(DynkinDiagram::from_spec("A2").unwrap());
        let w = weyl::parse_word(&d, "1,2,1").unwrap();
        assert!(Heap::build(d, &w).is_err());
    }

    #[test]
    fn commutation_equivalent_words_same_heap() {
        let d = Arc::new(DynkinDiagram::from_spec("A4").unwrap());
        let w1 = weyl::parse_word(&d, "3,4,2,3,1,2").unwrap();
        let w2 = weyl::parse_word(&d, "3,2,4,3,1,2").unwrap(); // swap commuting 4,2
        let h1 = Heap::build(d.clone(), &w1).unwrap();
        let h2 = Heap::build(d, &w2).unwrap();
        assert_eq!(h1.runner, h2.runner);
        assert_eq!(h1.covers(), h2.covers());
        assert_eq!(h1.level, h2.level);
    }

    #[test]
    fn good_order_and_colouring() {
        for (spec, word) in [
            ("A3", "2,3,1,2"),
            ("A4", "3,4,2,3,1,2"),
            ("D5", "5,3,2,4,1,3,2,5,3,4"),
        ] {
            let h = heap_of(spec, word);
            let order = h.good_order().unwrap();
            assert!(h.validate_good_order(&order), "{spec} {word}");
            let (two, _) = two_colour_and_orient(h.diagram());
            let ec = four_colouring(&h, &two).unwrap();
            validate_colouring(&h, &two, &ec).unwrap();
        }
    }

    #[test]
    fn diamond_colouring_pairs() {
        let h = heap_of("A3", "2,3,1,2");
        let (two, _) = two_colour_and_orient(h.diagram());
        let ec = four_colouring(&h, &two).unwrap();
        let top = h.fibre(1)[1];
        let bottom = h.fibre(1)[0];
        // downward edges from the top bead (runner 2 is a (−) vertex) are R/B
        let mut top_cols: Vec<EdgeColour> =
            h.covers_below(top).iter().map(|&y| ec.colour[&(y, top)]).collect();
        top_cols.sort();
        assert_eq!(top_cols, vec![EdgeColour::R, EdgeColour::B].tap_sorted_vec());
        let mut bot_cols: Vec<EdgeColour> =
            h.covers_above(bottom).iter().map(|&z| ec.colour[&(bottom, z)]).collect();
        bot_cols.sort();
        assert_eq!(bot_cols, vec![EdgeColour::G, EdgeColour::Y].tap_sorted_vec());
    }

    trait TapSortedVec {
        fn tap_sorted_vec(self) -> Self;
    }
    impl TapSortedVec for Vec<EdgeColour> {
        fn tap_sorted_vec(mut self) -> Self {
            self.sort();
            self
        }
    }
}
