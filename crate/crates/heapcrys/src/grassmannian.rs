//! Submodules of `ℂH(w)^{⊕n}` over exact rationals: the coordinate-flag
//! filtration `M^{≤k}`, subquotient ideals, the Jordan-type map `Φ_M`, the
//! generic sampler for `Z(Φ)°`, the C1/C2 conditions, and the type-A Springer
//! fibre comparison.
//!
//! Vertex spaces are `n` stacked copies of the fibre space, coordinate
//! `(copy k, bead s) ↦ k·q_i + s`, so `M^{≤k}` is an intersection with a
//! coordinate prefix and `ker A_i^s` is a coordinate span.

use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::crystal::Rpp;
use crate::heap::IdealMask;
use crate::preproj::{HeapModule, SocleDimMatrix};
use crate::ratmat::{self, QMat, Q};
use crate::{Error, Result};

/// `ℂH(w)^{⊕n}` with cached block matrices.
pub struct Ambient {
    pub module: Arc<HeapModule>,
    pub copies: usize,
}

impl Ambient {
    pub fn new(module: Arc<HeapModule>, copies: usize) -> Self {
        assert!(copies >= 1);
        Ambient { module, copies }
    }

    pub fn rank(&self) -> usize {
        self.module.diagram().rank()
    }

    pub fn fibre_dim(&self, i: usize) -> usize {
        self.module.fibre_dim(i)
    }

    pub fn vertex_dim(&self, i: usize) -> usize {
        self.copies * self.fibre_dim(i)
    }

    /// Block-diagonal extension of a single-copy map at vertex granularity.
    pub fn big(&self, single: &QMat) -> QMat {
        let (r, c) = (single.nrows(), single.ncols());
        let mut out = QMat::zeros(self.copies * r, self.copies * c);
        for k in 0..self.copies {
            for rr in 0..r {
                for cc in 0..c {
                    let v = single[(rr, cc)].clone();
                    if !num_traits::Zero::is_zero(&v) {
                        out[(k * r + rr, k * c + cc)] = v;
                    }
                }
            }
        }
        out
    }

    pub fn big_arrow(&self, tail: usize, head: usize) -> QMat {
        self.big(self.module.arrow(tail, head).expect("arrow exists"))
    }

    pub fn big_shift(&self, i: usize) -> QMat {
        self.big(&self.module.shift(i))
    }

    /// Unit rows spanning the first `k` copies at vertex `i`.
    pub fn copy_prefix_rows(&self, i: usize, k: usize) -> QMat {
        let q = self.fibre_dim(i);
        let rows: Vec<Vec<Q>> = (0..k * q)
            .map(|t| {
                let mut r = vec![ratmat::q(0); self.vertex_dim(i)];
                r[t] = ratmat::q(1);
                r
            })
            .collect();
        QMat::from_rows(rows, self.vertex_dim(i))
    }

    /// Unit rows spanning `ker A_i^s` in all copies (bead positions < s).
    pub fn shift_kernel_rows(&self, i: usize, s: usize) -> QMat {
        let q = self.fibre_dim(i);
        let mut rows = Vec::new();
        for k in 0..self.copies {
            for pos in 0..s.min(q) {
                let mut r = vec![ratmat::q(0); self.vertex_dim(i)];
                r[k * q + pos] = ratmat::q(1);
                rows.push(r);
            }
        }
        QMat::from_rows(rows, self.vertex_dim(i))
    }
}

/// A graded, arrow-closed subspace in reduced echelon form per vertex.
#[derive(Clone)]
pub struct Submodule {
    pub ambient: Arc<Ambient>,
    pub blocks: Vec<QMat>,
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.blocks == other.blocks
    }
}
impl Eq for Submodule {}

impl Submodule {
    pub fn from_rows(ambient: Arc<Ambient>, blocks: Vec<QMat>) -> Self {
        let blocks = blocks.into_iter().map(|b| b.row_basis()).collect();
        Submodule { ambient, blocks }
    }

    pub fn zero(ambient: Arc<Ambient>) -> Self {
        let blocks =
            (0..ambient.rank()).map(|i| QMat::zeros(0, ambient.vertex_dim(i))).collect();
        Submodule { ambient, blocks }
    }

    pub fn dim(&self, i: usize) -> usize {
        self.blocks[i].nrows()
    }

    pub fn total_dim(&self) -> usize {
        self.blocks.iter().map(|b| b.nrows()).sum()
    }

    pub fn is_arrow_closed(&self) -> bool {
        self.ambient.module.arrows().iter().all(|&(t, h, _)| {
            let image = ratmat::space_image(&self.blocks[t], &self.ambient.big_arrow(t, h));
            ratmat::space_subset(&image, &self.blocks[h])
        })
    }

    /// Close the spans under all arrows (used by the random-module generator).
    pub fn arrow_closure(mut self) -> Self {
        loop {
            let mut grew = false;
            for (t, h, _) in self.ambient.module.arrows() {
                let image =
                    ratmat::space_image(&self.blocks[t], &self.ambient.big_arrow(t, h));
                if !ratmat::space_subset(&image, &self.blocks[h]) {
                    self.blocks[h] = ratmat::space_sum(&self.blocks[h], &image);
                    grew = true;
                }
            }
            if !grew {
                return self;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Filtration by coordinate flags
// ---------------------------------------------------------------------------

pub struct Filtration {
    /// `M^{≤k}` for k = 0..n, per vertex.
    pub leq: Vec<Vec<QMat>>,
    /// Subquotients `M^k = M^{≤k}/M^{≤k−1}` realized inside a single copy.
    pub subquotients: Vec<Vec<QMat>>,
    /// Ideal identification of each subquotient when it is coordinate.
    pub ideals: Vec<Option<IdealMask>>,
}

pub fn filtration(m: &Submodule) -> Filtration {
    let amb = &m.ambient;
    let n = amb.copies;
    let mut leq: Vec<Vec<QMat>> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let blocks: Vec<QMat> = (0..amb.rank())
            .map(|i| {
                if k == n {
                    m.blocks[i].clone()
                } else {
                    ratmat::space_intersect(&m.blocks[i], &amb.copy_prefix_rows(i, k))
                }
            })
            .collect();
        leq.push(blocks);
    }
    let mut subquotients = Vec::with_capacity(n);
    let mut ideals = Vec::with_capacity(n);
    for k in 1..=n {
        let blocks: Vec<QMat> = (0..amb.rank())
            .map(|i| {
                let q = amb.fibre_dim(i);
                let src = &leq[k][i];
                let rows: Vec<Vec<Q>> = (0..src.nrows())
                    .map(|r| src.row(r)[(k - 1) * q..k * q].to_vec())
                    .collect();
                QMat::from_rows(rows, q).row_basis()
            })
            .collect();
        ideals.push(coordinate_ideal(m, &blocks));
        subquotients.push(blocks);
    }
    Filtration { leq, subquotients, ideals }
}

/// When every block is spanned by unit vectors, return the corresponding
/// subset of heap elements provided it is an order ideal.
fn coordinate_ideal(m: &Submodule, blocks: &[QMat]) -> Option<IdealMask> {
    let heap = &m.ambient.module.heap;
    let mut mask: IdealMask = 0;
    for (i, b) in blocks.iter().enumerate() {
        for r in 0..b.nrows() {
            let row = b.row(r);
            let support: Vec<usize> = row
                .iter()
                .enumerate()
                .filter(|(_, v)| !num_traits::Zero::is_zero(*v))
                .map(|(c, _)| c)
                .collect();
            if support.len() != 1 || row[support[0]] != ratmat::q(1) {
                return None;
            }
            mask |= 1 << heap.fibre(i)[support[0]];
        }
    }
    heap.is_ideal(mask).then_some(mask)
}

/// Is `M` in the locus `U` of increasing subquotients?
pub fn in_increasing_locus(f: &Filtration) -> bool {
    f.subquotients
        .windows(2)
        .all(|w| w[0].iter().zip(&w[1]).all(|(a, b)| ratmat::space_subset(a, b)))
}

// ---------------------------------------------------------------------------
// Jordan data
// ---------------------------------------------------------------------------

/// `Φ_M(x_i^s) = dim(ker A_i^s ∩ M_i) − dim(ker A_i^{s−1} ∩ M_i)`, with a
/// validity flag recording whether the raw values are order-reversing.
pub fn phi_of_module(m: &Submodule) -> (Rpp, bool) {
    let amb = &m.ambient;
    let heap = &amb.module.heap;
    let mut values = vec![0u8; heap.len()];
    for i in 0..amb.rank() {
        let q = amb.fibre_dim(i);
        let mut prev = 0usize;
        for s in 1..=q {
            let ker = amb.shift_kernel_rows(i, s);
            let cur = ratmat::dim_intersection(&m.blocks[i], &ker);
            let x = heap.fibre(i)[s - 1];
            values[x] = (cur - prev) as u8;
            prev = cur;
        }
    }
    let rpp = Rpp { values, height: amb.copies as u8 };
    let valid = rpp.is_valid(heap);
    (rpp, valid)
}

/// Left side of the dimension identity: `dim(M_i ∩ ker A_i^s)`.
pub fn kernel_intersection_dim(m: &Submodule, i: usize, s: usize) -> usize {
    ratmat::dim_intersection(&m.blocks[i], &m.ambient.shift_kernel_rows(i, s))
}

/// Socle dimension matrix via path kernels, exact ranks.
pub fn socle_dim_matrix(m: &Submodule) -> SocleDimMatrix {
    let amb = &m.ambient;
    let heap = &amb.module.heap;
    let d = heap.diagram();
    let max_level = (0..heap.len()).map(|x| heap.level(x)).max().unwrap_or(0);
    let mut entries = std::collections::BTreeMap::new();
    for i in 0..amb.rank() {
        if amb.fibre_dim(i) == 0 {
            continue;
        }
        let mut prev = 0usize;
        for k in 1..=max_level {
            let single = amb.module.socle_filtration_rows(i, k);
            let big = big_rows(amb, i, &single);
            let cur = ratmat::dim_intersection(&m.blocks[i], &big);
            if cur > prev {
                entries.insert((d.label(i), k), cur - prev);
            }
            prev = cur;
        }
        // paths longer than the maximal level vanish, so soc^{max} is full
        debug_assert_eq!(prev, m.dim(i));
    }
    SocleDimMatrix { entries }
}

/// Embed single-copy rows diagonally across all copies.
fn big_rows(amb: &Ambient, i: usize, single: &QMat) -> QMat {
    let q = amb.fibre_dim(i);
    let mut rows = Vec::new();
    for k in 0..amb.copies {
        for r in 0..single.nrows() {
            let mut row = vec![ratmat::q(0); amb.vertex_dim(i)];
            for c in 0..q {
                row[k * q + c] = single[(r, c)].clone();
            }
            rows.push(row);
        }
    }
    QMat::from_rows(rows, amb.vertex_dim(i))
}

// ---------------------------------------------------------------------------
// C1 / C2 conditions
// ---------------------------------------------------------------------------

/// Evaluate `C1(i,k,s)` and `C2(i,k,s)` by exact image/containment ranks.
pub fn check_c1_c2(m: &Submodule, f: &Filtration, i: usize, k: usize, s: usize) -> (bool, bool) {
    let amb = &m.ambient;
    let shift = amb.big_shift(i);
    let mut power = QMat::identity(amb.vertex_dim(i));
    for _ in 0..s {
        power = power.mul(&shift);
    }
    let image_of = |blocks: &Vec<QMat>| ratmat::space_image(&blocks[i], &power);
    let leq = |k: i64| -> &Vec<QMat> {
        let idx = k.max(0) as usize;
        &f.leq[idx.min(amb.copies)]
    };
    let zero_block = QMat::zeros(0, amb.vertex_dim(i));
    let sub = |kk: i64| -> &QMat {
        if kk < 0 {
            &zero_block
        } else {
            &leq(kk)[i]
        }
    };
    let k = k as i64;
    // C1: ∃m ∈ M^{≤k-1}: A^s m ∉ M^{≤k-2}  ⇒  ∃m' ∈ M^{≤k}: A^s m' ∉ M^{≤k-1}
    let ante1 = !ratmat::space_subset(&image_of(leq(k - 1)), sub(k - 2));
    let cons = !ratmat::space_subset(&image_of(leq(k)), sub(k - 1));
    let c1 = !ante1 || cons;
    // C2: ∃m ∈ M^{≤k}: A^s m ≠ 0  ⇒  same consequent
    let ante2 = image_of(leq(k)).nrows() > 0;
    let c2 = !ante2 || cons;
    (c1, c2)
}

/// All-(i,k,s) sweep; s is capped by the fibre size.
pub fn satisfies_c1_c2(m: &Submodule, f: &Filtration) -> (bool, bool) {
    let amb = &m.ambient;
    let mut all1 = true;
    let mut all2 = true;
    for i in 0..amb.rank() {
        for k in 1..=amb.copies {
            for s in 0..=amb.fibre_dim(i) {
                let (c1, c2) = check_c1_c2(m, f, i, k, s);
                all1 &= c1;
                all2 &= c2;
            }
        }
    }
    (all1, all2)
}

/// Right side of the Lemma 5.3 style identity: sums of subquotient kernels.
pub fn subquotient_kernel_sum(m: &Submodule, f: &Filtration, i: usize, s: usize) -> usize {
    let amb = &m.ambient;
    let q = amb.fibre_dim(i);
    let rows: Vec<Vec<Q>> = (0..s.min(q))
        .map(|pos| {
            let mut r = vec![ratmat::q(0); q];
            r[pos] = ratmat::q(1);
            r
        })
        .collect();
    let ker_single = QMat::from_rows(rows, q);
    f.subquotients
        .iter()
        .map(|blocks| ratmat::dim_intersection(&blocks[i], &ker_single))
        .sum()
}

// ---------------------------------------------------------------------------
// Endomorphisms and the Z(Φ)° sampler
// ---------------------------------------------------------------------------

/// Basis of `End_Π(ℂH(w))`: tuples of per-vertex matrices commuting with all
/// arrow maps.
pub fn endomorphism_basis(module: &HeapModule) -> Vec<Vec<QMat>> {
    let d = module.diagram();
    let rank = d.rank();
    let dims: Vec<usize> = (0..rank).map(|i| module.fibre_dim(i)).collect();
    let offsets: Vec<usize> = {
        let mut off = vec![0usize];
        for i in 0..rank {
            off.push(off[i] + dims[i] * dims[i]);
        }
        off
    };
    let total = offsets[rank];
    // constraint rows: for each arrow a: t→h, (M_a h_t − h_h M_a) = 0
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for (t, h, _) in module.arrows() {
        let a = module.arrow(t, h).unwrap();
        let (qt, qh) = (dims[t], dims[h]);
        for r in 0..qh {
            for c in 0..qt {
                let mut row = vec![ratmat::q(0); total];
                // (M_a h_t)[r][c] = Σ_x a[r][x] h_t[x][c]
                for x in 0..qt {
                    if !num_traits::Zero::is_zero(&a[(r, x)]) {
                        row[offsets[t] + x * qt + c] =
                            &row[offsets[t] + x * qt + c] + &a[(r, x)];
                    }
                }
                // −(h_h M_a)[r][c] = −Σ_y h_h[r][y] a[y][c]
                for y in 0..qh {
                    if !num_traits::Zero::is_zero(&a[(y, c)]) {
                        row[offsets[h] + r * qh + y] =
                            &row[offsets[h] + r * qh + y] - &a[(y, c)];
                    }
                }
                rows.push(row);
            }
        }
    }
    let constraints = QMat::from_rows(rows, total);
    let kernel = if constraints.nrows() == 0 {
        QMat::identity(total)
    } else {
        constraints.kernel()
    };
    (0..kernel.nrows())
        .map(|r| {
            (0..rank)
                .map(|i| {
                    let q = dims[i];
                    let mut m = QMat::zeros(q, q);
                    for x in 0..q {
                        for y in 0..q {
                            m[(x, y)] = kernel[(r, offsets[i] + x * q + y)].clone();
                        }
                    }
                    m
                })
                .collect()
        })
        .collect()
}

/// Draw a generic point of `Z(Φ)°` for the increasing chain `φ^1 ⊆ … ⊆ φ^n`:
/// each copy-k slice is the image of `ℂφ^k` under a column map whose lower
/// slots carry random endomorphisms and whose k-th slot is the identity.
pub fn sample_z_phi(
    ambient: Arc<Ambient>,
    end_basis: &[Vec<QMat>],
    chain: &[IdealMask],
    seed: u64,
) -> Result<Submodule> {
    const RETRY_BUDGET: usize = 32;
    const COEFF_RANGE: i64 = 9;
    let n = ambient.copies;
    if chain.len() != n {
        return Err(Error::Module("chain length must equal the number of copies".into()));
    }
    let heap = ambient.module.heap.clone();
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    for _attempt in 0..RETRY_BUDGET {
        // draw h_{m,k} for 1 ≤ m < k ≤ n
        let mut h: HashMap<(usize, usize), Vec<QMat>> = HashMap::new();
        for k in 1..=n {
            for m in 1..k {
                let mut acc: Vec<QMat> = (0..ambient.rank())
                    .map(|i| QMat::zeros(ambient.fibre_dim(i), ambient.fibre_dim(i)))
                    .collect();
                for basis_elem in end_basis {
                    let c = rng.gen_range(-COEFF_RANGE..=COEFF_RANGE);
                    if c != 0 {
                        for (a, b) in acc.iter_mut().zip(basis_elem) {
                            *a = a.add(&b.scale(&ratmat::q(c)));
                        }
                    }
                }
                h.insert((m, k), acc);
            }
        }
        // assemble rows
        let mut blocks: Vec<Vec<Vec<Q>>> =
            (0..ambient.rank()).map(|_| Vec::new()).collect();
        for (k1, &mask) in chain.iter().enumerate() {
            let k = k1 + 1;
            for x in crate::heap::ideal_members(mask) {
                let i = heap.runner(x);
                let s = heap.fibre_pos(x);
                let q = ambient.fibre_dim(i);
                let mut row = vec![ratmat::q(0); ambient.vertex_dim(i)];
                row[(k - 1) * q + s] = ratmat::q(1);
                for m in 1..k {
                    let hm = &h[&(m, k)][i];
                    for r in 0..q {
                        if !num_traits::Zero::is_zero(&hm[(r, s)]) {
                            row[(m - 1) * q + r] = hm[(r, s)].clone();
                        }
                    }
                }
                blocks[i].push(row);
            }
        }
        let sub = Submodule::from_rows(
            ambient.clone(),
            blocks
                .into_iter()
                .enumerate()
                .map(|(i, rows)| QMat::from_rows(rows, ambient.vertex_dim(i)))
                .collect(),
        );
        debug_assert!(sub.is_arrow_closed());
        let f = filtration(&sub);
        let ok = f
            .ideals
            .iter()
            .zip(chain)
            .all(|(got, want)| *got == Some(*want));
        if ok {
            return Ok(sub);
        }
    }
    Err(Error::Module(
        "Z(Φ)° sampler exhausted its retry budget; this indicates a construction bug".into(),
    ))
}

/// A seeded arbitrary submodule: arrow closure of a few random vectors.
/// These need not lie in any `Z(Φ)°` and routinely leave the locus `U`.
pub fn random_submodule(ambient: Arc<Ambient>, seed: u64) -> Submodule {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let rank = ambient.rank();
    let generators = 1 + (rng.gen_range(0..4)) as usize;
    let mut blocks: Vec<Vec<Vec<Q>>> = (0..rank).map(|_| Vec::new()).collect();
    for _ in 0..generators {
        let i = rng.gen_range(0..rank);
        if ambient.vertex_dim(i) == 0 {
            continue;
        }
        let row: Vec<Q> =
            (0..ambient.vertex_dim(i)).map(|_| ratmat::q(rng.gen_range(-4..=4))).collect();
        blocks[i].push(row);
    }
    let sub = Submodule::from_rows(
        ambient.clone(),
        blocks
            .into_iter()
            .enumerate()
            .map(|(i, rows)| QMat::from_rows(rows, ambient.vertex_dim(i)))
            .collect(),
    );
    sub.arrow_closure()
}

// ---------------------------------------------------------------------------
// Main theorem verification
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct MainTheoremFailure {
    pub word: String,
    pub copies: usize,
    pub phi_values: Vec<u8>,
    pub seed: u64,
    pub reason: String,
}

#[derive(Debug)]
pub struct MainTheoremReport {
    pub rpp_count: usize,
    pub samples: usize,
    pub failures: Vec<MainTheoremFailure>,
}

/// For every `Φ ∈ RPP(w,n)` and every seed: sample `M ∈ Z(Φ)°` and check
/// `Φ_M = Φ`, the kernel-dimension identity, and `SD_M = Φ` on the heap with
/// zero outside.
pub fn verify_main_theorem(
    module: Arc<HeapModule>,
    copies: usize,
    seeds: &[u64],
) -> Result<MainTheoremReport> {
    let ambient = Arc::new(Ambient::new(module.clone(), copies));
    let end_basis = endomorphism_basis(&module);
    let heap = module.heap.clone();
    let rpps = crate::crystal::enumerate_rpps(&heap, copies as u8);
    let word = crate::weyl::word_string(module.diagram(), heap.word());
    use rayon::prelude::*;
    let failures: Vec<MainTheoremFailure> = rpps
        .par_iter()
        .flat_map(|rpp| {
            let chain = rpp.chain(&heap);
            let mut local = Vec::new();
            for &seed in seeds {
                let fail = |reason: String| MainTheoremFailure {
                    word: word.clone(),
                    copies,
                    phi_values: rpp.values.clone(),
                    seed,
                    reason,
                };
                let m = match sample_z_phi(ambient.clone(), &end_basis, &chain, seed) {
                    Ok(m) => m,
                    Err(e) => {
                        local.push(fail(format!("sampler: {e}")));
                        continue;
                    }
                };
                let (phi_m, valid) = phi_of_module(&m);
                if !valid || phi_m != *rpp {
                    local.push(fail("Φ_M ≠ Φ".to_string()));
                    continue;
                }
                // dimension identity per (i, s)
                for i in 0..ambient.rank() {
                    let fibre = heap.fibre(i);
                    let mut partial = 0usize;
                    for s in 1..=fibre.len() {
                        partial += rpp.values[fibre[s - 1]] as usize;
                        if kernel_intersection_dim(&m, i, s) != partial {
                            local.push(fail(format!(
                                "dim(M ∩ ker A^{s}) mismatch at vertex {i}"
                            )));
                        }
                    }
                }
                // socle dimension matrix
                let sd = socle_dim_matrix(&m);
                match sd.restrict_to_heap(&heap) {
                    Ok(vals) => {
                        let as_u8: Vec<u8> = vals.iter().map(|&v| v as u8).collect();
                        if as_u8 != rpp.values {
                            local.push(fail("SD_M ≠ Φ on the heap".to_string()));
                        }
                    }
                    Err(e) => local.push(fail(format!("SD support: {e}"))),
                }
            }
            local
        })
        .collect();
    Ok(MainTheoremReport { rpp_count: rpps.len(), samples: rpps.len() * seeds.len(), failures })
}

// ---------------------------------------------------------------------------
// Springer fibre comparison (type A, λ = ω_p)
// ---------------------------------------------------------------------------

#[derive(Debug)]
pub struct SpringerReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

/// Compare the flag built from `V_i = L^{m−p−i}(M_{m−i})` against the
/// Schützenberger twist of the RPP-derived tableau, for sampled submodules.
pub fn springer_compare(m_rank: usize, p: usize, copies: usize, seeds: &[u64]) -> Result<SpringerReport> {
    if p > m_rank / 2 {
        return Err(Error::Module("Springer comparison needs p ≤ m/2".into()));
    }
    let crystal = crate::tableaux::rectangle_crystal(m_rank, p)?;
    let heap = crystal.heap.clone();
    let module = Arc::new(HeapModule::build(heap.clone())?);
    let d = module.diagram().clone();
    let ambient = Arc::new(Ambient::new(module.clone(), copies));
    let end_basis = endomorphism_basis(&module);

    // the flag lives at vertex p (label), with A = A_p of Jordan type (p^n)
    let ip = d.index_of(p)?;
    let full_dim = ambient.vertex_dim(ip);
    let shift = ambient.big_shift(ip);

    let mut failures = Vec::new();
    let mut checked = 0usize;

    let mut targets: Vec<(String, Submodule)> = Vec::new();
    if copies == 1 {
        for mask in heap.order_ideals(100_000)? {
            let blocks = module.ideal_submodule_rows(mask);
            targets.push((
                format!("ideal {mask:#x}"),
                Submodule::from_rows(ambient.clone(), blocks),
            ));
        }
    } else {
        let rpps = crate::crystal::enumerate_rpps(&heap, copies as u8);
        for (t, &seed) in seeds.iter().enumerate() {
            let rpp = &rpps[(seed as usize + t) % rpps.len()];
            let m = sample_z_phi(ambient.clone(), &end_basis, &rpp.chain(&heap), seed)?;
            targets.push((format!("seed {seed}"), m));
        }
    }

    for (tag, sub) in targets {
        checked += 1;
        // left-going composite from vertex `from` down to vertex `to`
        let left_composite = |from: usize, to: usize| -> QMat {
            let mut acc = QMat::identity(ambient.vertex_dim(d.index_of(from).unwrap()));
            let mut v = from;
            while v > to {
                let a = ambient.big_arrow(d.index_of(v).unwrap(), d.index_of(v - 1).unwrap());
                acc = a.mul(&acc);
                v -= 1;
            }
            acc
        };
        // V_i for i = 1..m−1 inside the vertex-p space
        let mut flags: Vec<QMat> = Vec::new();
        for i in 1..m_rank {
            let src = m_rank - i; // vertex label
            let vi = if i <= m_rank - p {
                let f = left_composite(src, p);
                ratmat::space_image(&sub.blocks[d.index_of(src).unwrap()], &f)
            } else {
                let f = left_composite(p, src);
                ratmat::space_preimage(&sub.blocks[d.index_of(src).unwrap()], &f)
            };
            flags.push(vi);
        }
        let full = QMat::identity(full_dim);
        flags.push(full);
        // A-stability and nesting
        let mut ok = true;
        for i in 0..flags.len() {
            if i > 0 && !ratmat::space_subset(&flags[i - 1], &flags[i]) {
                failures.push(format!("{tag}: flag is not nested at step {i}"));
                ok = false;
            }
            let image = ratmat::space_image(&flags[i], &shift);
            let prev = if i == 0 { QMat::zeros(0, full_dim) } else { flags[i - 1].clone() };
            if !ratmat::space_subset(&image, &prev) {
                failures.push(format!("{tag}: flag is not A-stable at step {i}"));
                ok = false;
            }
        }
        if !ok {
            continue;
        }
        // GT rows from Jordan types of A|_{V_i}
        let mut gt_rows: Vec<Vec<i64>> = Vec::new();
        for (i, v) in flags.iter().enumerate() {
            let mut row = Vec::new();
            let mut prev = 0usize;
            for s in 1..=p.min(i + 1) {
                let ker = ambient.shift_kernel_rows(ip, s);
                let cur = ratmat::dim_intersection(v, &ker);
                row.push((cur - prev) as i64);
                prev = cur;
            }
            while row.len() < i + 1 {
                row.push(0);
            }
            gt_rows.push(row);
        }
        let gt = crate::tableaux::GtPattern { rows: gt_rows };
        let psi_v = match crate::tableaux::tableau_of_gt(&gt) {
            Ok(t) => t,
            Err(e) => {
                failures.push(format!("{tag}: flag Jordan types are not a tableau: {e}"));
                continue;
            }
        };
        // RPP side: the GT correspondence already carries the Schützenberger
        // twist (it reverses highest and lowest), so the flag tableau must
        // equal the image of Φ_M on the nose.
        let (phi_m, valid) = phi_of_module(&sub);
        if !valid {
            failures.push(format!("{tag}: Φ_M is not order-reversing"));
            continue;
        }
        let tau =
            crate::tableaux::rectangular_tableau_of_rpp(&phi_m, &heap, m_rank, p)?;
        if tau != psi_v {
            failures.push(format!("{tag}: flag tableau differs from the twisted RPP tableau"));
        }
    }
    Ok(SpringerReport { checked, failures })
}

// ---------------------------------------------------------------------------
// JSON fixtures
// ---------------------------------------------------------------------------

/// Submodule fixture: ambient description plus per-vertex rational rows.
#[derive(serde::Serialize, serde::Deserialize)]
pub struct SubmoduleJson {
    pub diagram: String,
    pub word: String,
    pub copies: usize,
    /// keyed by vertex label; each row has `copies · q_i` entries "p/q"
    pub rows: std::collections::BTreeMap<String, Vec<Vec<String>>>,
}

pub fn submodule_to_json(m: &Submodule) -> SubmoduleJson {
    let d = m.ambient.module.diagram();
    let mut rows = std::collections::BTreeMap::new();
    for i in 0..m.ambient.rank() {
        if m.blocks[i].nrows() > 0 {
            rows.insert(d.label(i).to_string(), m.blocks[i].to_string_rows());
        }
    }
    SubmoduleJson {
        diagram: d.name().to_string(),
        word: crate::weyl::word_string(d, m.ambient.module.heap.word()),
        copies: m.ambient.copies,
        rows,
    }
}

pub fn submodule_from_json(json: &SubmoduleJson) -> Result<Submodule> {
    let d = Arc::new(crate::dynkin::DynkinDiagram::from_spec(&json.diagram)?);
    let word = crate::weyl::parse_word(&d, &json.word)?;
    let heap = Arc::new(crate::heap::Heap::build(d.clone(), &word)?);
    let module = Arc::new(HeapModule::build(heap)?);
    let ambient = Arc::new(Ambient::new(module, json.copies));
    let mut blocks: Vec<QMat> =
        (0..ambient.rank()).map(|i| QMat::zeros(0, ambient.vertex_dim(i))).collect();
    for (label, rows) in &json.rows {
        let label: usize =
            label.parse().map_err(|_| Error::Parse(format!("bad vertex label {label:?}")))?;
        let i = d.index_of(label)?;
        let parsed: Vec<Vec<Q>> = rows
            .iter()
            .map(|row| {
                if row.len() != ambient.vertex_dim(i) {
                    return Err(Error::Parse(format!(
                        "row at vertex {label} has {} entries, expected {}",
                        row.len(),
                        ambient.vertex_dim(i)
                    )));
                }
                row.iter()
                    .map(|s| ratmat::parse_q(s).map_err(Error::Parse))
                    .collect()
            })
            .collect::<Result<_>>()?;
        blocks[i] = QMat::from_rows(parsed, ambient.vertex_dim(i));
    }
    let sub = Submodule::from_rows(ambient, blocks);
    if !sub.is_arrow_closed() {
        return Err(Error::Module("fixture rows are not arrow-closed".into()));
    }
    Ok(sub)
}
