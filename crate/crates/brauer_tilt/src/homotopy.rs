//! Exact Hom-space dimensions between shifted two-term complexes of
//! projectives, and the compatibility / order predicates built on them.
//!
//! A two-term complex lives in degrees -1 and 0.  Writing `d` for a
//! differential, the three dimensions computed here are
//!
//! * shift +1: `Hom(X^{-1}, Y^0)` modulo `h0 . dX + dY . h1`;
//! * shift -1: maps `f: X^0 -> Y^{-1}` with `dY . f = 0` and `f . dX = 0`
//!   (there are no homotopies);
//! * shift  0: chain maps `(f1, f0)` with `dY . f1 = f0 . dX`, modulo the
//!   homotopies `(h . dX, dY . h)`.
//!
//! Shifted differentials carry no extra sign here; dimensions are unaffected.
//! All ranks are exact over the rationals (fraction-free elimination).

use std::collections::HashMap;

use crate::algebra::{Algebra, BasisElem, LinComb};
use crate::linalg;
use crate::tree::BrauerTree;
use crate::walks::SignedWalk;
use crate::{Error, Result};

/// A complex of projectives concentrated in degrees -1 and 0.
#[derive(Debug, Clone)]
pub struct TwoTermComplex {
    /// projective indices in degree -1
    neg: Vec<usize>,
    /// projective indices in degree 0
    pos: Vec<usize>,
    /// diff[j][i] in Hom(P_neg[i], P_pos[j])
    diff: Vec<Vec<LinComb>>,
    token: u64,
}

impl TwoTermComplex {
    /// Builds a complex, checking every entry lies in the right Hom space.
    pub fn new(alg: &Algebra, neg: Vec<usize>, pos: Vec<usize>, diff: Vec<Vec<LinComb>>) -> Self {
        assert_eq!(diff.len(), pos.len());
        for (j, row) in diff.iter().enumerate() {
            assert_eq!(row.len(), neg.len());
            for (i, entry) in row.iter().enumerate() {
                for (b, _) in &entry.0 {
                    assert_eq!(b.source(), neg[i], "entry outside its Hom space");
                    assert_eq!(b.target(), pos[j], "entry outside its Hom space");
                }
            }
        }
        TwoTermComplex {
            neg,
            pos,
            diff,
            token: alg.token(),
        }
    }

    /// Stalk complex of one projective in degree 0 (`positive`) or -1.
    pub fn stalk(alg: &Algebra, edge: usize, positive: bool) -> Self {
        if positive {
            TwoTermComplex::new(alg, vec![], vec![edge], vec![vec![]])
        } else {
            TwoTermComplex::new(alg, vec![edge], vec![], vec![])
        }
    }

    /// Direct sum, block-diagonal differential.
    pub fn direct_sum(alg: &Algebra, parts: &[&TwoTermComplex]) -> Self {
        let mut neg = Vec::new();
        let mut pos = Vec::new();
        for p in parts {
            assert_eq!(p.token, alg.token());
            neg.extend_from_slice(&p.neg);
            pos.extend_from_slice(&p.pos);
        }
        let mut diff = vec![vec![LinComb::zero(); neg.len()]; pos.len()];
        let (mut off_n, mut off_p) = (0, 0);
        for p in parts {
            for (j, row) in p.diff.iter().enumerate() {
                for (i, entry) in row.iter().enumerate() {
                    diff[off_p + j][off_n + i] = entry.clone();
                }
            }
            off_n += p.neg.len();
            off_p += p.pos.len();
        }
        TwoTermComplex::new(alg, neg, pos, diff)
    }

    pub fn neg(&self) -> &[usize] {
        &self.neg
    }

    pub fn pos(&self) -> &[usize] {
        &self.pos
    }

    pub fn diff(&self) -> &[Vec<LinComb>] {
        &self.diff
    }
}

/// Coordinates of Hom(+P_from, +P_to): one axis per (i, j, basis element).
struct HomCoords {
    entries: Vec<(usize, usize, BasisElem)>,
    index: HashMap<(usize, usize, BasisElem), usize>,
}

fn hom_coords(alg: &Algebra, from: &[usize], to: &[usize]) -> HomCoords {
    let mut entries = Vec::new();
    for (i, &a) in from.iter().enumerate() {
        for (j, &b) in to.iter().enumerate() {
            for &basis in alg.hom(a, b) {
                entries.push((i, j, basis));
            }
        }
    }
    let index = entries
        .iter()
        .enumerate()
        .map(|(k, &e)| (e, k))
        .collect();
    HomCoords { entries, index }
}

/// Image vectors of the elementary maps of Hom(mid, to) under
/// `h -> h . d`, where `d[m][s]: P_src[s] -> P_mid[m]`.
fn images_precompose(
    alg: &Algebra,
    src: &[usize],
    d: &[Vec<LinComb>],
    h_coords: &HomCoords,
    out_coords: &HomCoords,
) -> Vec<Vec<i128>> {
    h_coords
        .entries
        .iter()
        .map(|&(m, t, beta)| {
            let mut v = vec![0i128; out_coords.entries.len()];
            for s in 0..src.len() {
                for &(gamma, c) in &d[m][s].0 {
                    if let Some(delta) = alg.compose(beta, gamma) {
                        v[out_coords.index[&(s, t, delta)]] += i128::from(c);
                    }
                }
            }
            v
        })
        .collect()
}

/// Image vectors of the elementary maps of Hom(from, mid) under
/// `h -> d . h`, where `d[t][m]: P_mid[m] -> P_tgt[t]`.
fn images_postcompose(
    alg: &Algebra,
    tgt: &[usize],
    d: &[Vec<LinComb>],
    h_coords: &HomCoords,
    out_coords: &HomCoords,
) -> Vec<Vec<i128>> {
    h_coords
        .entries
        .iter()
        .map(|&(f, m, beta)| {
            let mut v = vec![0i128; out_coords.entries.len()];
            for t in 0..tgt.len() {
                for &(gamma, c) in &d[t][m].0 {
                    if let Some(delta) = alg.compose(gamma, beta) {
                        v[out_coords.index[&(f, t, delta)]] += i128::from(c);
                    }
                }
            }
            v
        })
        .collect()
}

/// Dimension of `Hom(X, Y[shift])` in the homotopy category,
/// `shift` in {-1, 0, 1}.
pub fn hom_dim(alg: &Algebra, x: &TwoTermComplex, y: &TwoTermComplex, shift: i32) -> Result<usize> {
    if x.token != alg.token() || y.token != alg.token() {
        return Err(Error::AlgebraMismatch);
    }
    match shift {
        1 => {
            let out = hom_coords(alg, &x.neg, &y.pos);
            if out.entries.is_empty() {
                return Ok(0);
            }
            let h0 = hom_coords(alg, &x.pos, &y.pos);
            let h1 = hom_coords(alg, &x.neg, &y.neg);
            let mut images = images_precompose(alg, &x.neg, &x.diff, &h0, &out);
            images.extend(images_postcompose(alg, &y.pos, &y.diff, &h1, &out));
            Ok(out.entries.len() - linalg::rank(&images))
        }
        -1 => {
            let f = hom_coords(alg, &x.pos, &y.neg);
            if f.entries.is_empty() {
                return Ok(0);
            }
            // constraints: dY . f in Hom(X^0, Y^0), f . dX in Hom(X^-1, Y^-1)
            let c0 = hom_coords(alg, &x.pos, &y.pos);
            let c1 = hom_coords(alg, &x.neg, &y.neg);
            let top = images_postcompose(alg, &y.pos, &y.diff, &f, &c0);
            let bottom = images_precompose(alg, &x.neg, &x.diff, &f, &c1);
            let rows: Vec<Vec<i128>> = top
                .into_iter()
                .zip(bottom)
                .map(|(a, b)| a.into_iter().chain(b).collect())
                .collect();
            Ok(f.entries.len() - linalg::rank(&rows))
        }
        0 => {
            let f1 = hom_coords(alg, &x.neg, &y.neg);
            let f0 = hom_coords(alg, &x.pos, &y.pos);
            let mixed = hom_coords(alg, &x.neg, &y.pos);
            // chain-map condition dY . f1 - f0 . dX = 0
            let mut chain_rows: Vec<Vec<i128>> =
                images_postcompose(alg, &y.pos, &y.diff, &f1, &mixed);
            for v in images_precompose(alg, &x.neg, &x.diff, &f0, &mixed) {
                chain_rows.push(v.into_iter().map(|t| -t).collect());
            }
            let kernel = f1.entries.len() + f0.entries.len() - linalg::rank(&chain_rows);
            // homotopies h: X^0 -> Y^-1 land in (f1, f0) as (h . dX, dY . h)
            let h = hom_coords(alg, &x.pos, &y.neg);
            let left = images_precompose(alg, &x.neg, &x.diff, &h, &f1);
            let right = images_postcompose(alg, &y.pos, &y.diff, &h, &f0);
            let homotopy_rows: Vec<Vec<i128>> = left
                .into_iter()
                .zip(right)
                .map(|(a, b)| a.into_iter().chain(b).collect())
                .collect();
            Ok(kernel - linalg::rank(&homotopy_rows))
        }
        s => panic!("hom_dim only supports shifts -1, 0, 1; got {s}"),
    }
}

/// Whether `Hom(X, X[i]) = 0` for i = +-1.
pub fn is_pretilting(alg: &Algebra, x: &TwoTermComplex) -> Result<bool> {
    Ok(hom_dim(alg, x, x, 1)? == 0 && hom_dim(alg, x, x, -1)? == 0)
}

/// Whether the direct sum of two pretilting complexes stays pretilting:
/// all four cross Hom spaces at shifts +-1 must vanish.
pub fn is_pretilting_pair(alg: &Algebra, x: &TwoTermComplex, y: &TwoTermComplex) -> Result<bool> {
    Ok(hom_dim(alg, x, y, 1)? == 0
        && hom_dim(alg, y, x, 1)? == 0
        && hom_dim(alg, x, y, -1)? == 0
        && hom_dim(alg, y, x, -1)? == 0)
}

/// Verdict of the combinatorial pre-filter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FastCheck {
    /// A necessary condition is violated; the pair is certainly incompatible.
    Incompatible,
    /// No verdict; the Hom oracle decides.
    Unknown,
}

/// Necessary conditions for two walks to be compatible:
///
/// 1. shared edges carry equal signs (the socle of the shared projective is
///    always a chain-map obstruction otherwise);
/// 2. for edge-disjoint walks, opposite signs on edges `a` of `w` and `b` of
///    `w2` meeting at a vertex `x` certify incompatibility whenever the
///    witnessing map `P_a -> P_b` survives against the neighboring
///    differential entries, i.e. every walk-neighbor composite either
///    switches vertex or overshoots the cycle at `x`.  When `x` has degree
///    two this is automatic; at higher degree the side condition is needed:
///    a partial cycle composed with a partial cycle around the same vertex
///    can be nonzero, killing the obstruction (the 3-star already shows
///    opposite-signed disjoint neighbors that are genuinely compatible).
///
/// Never returns a false `Incompatible`; `Unknown` means "ask the oracle".
pub fn compatible_fast(tree: &BrauerTree, w: &SignedWalk, w2: &SignedWalk) -> FastCheck {
    let mut share_edge = false;
    for (&e, &s) in w.edges().iter().zip(w.signs()) {
        if let Some(s2) = w2.sign_of(e) {
            share_edge = true;
            if s2 != s {
                return FastCheck::Incompatible;
            }
        }
    }
    if share_edge {
        return FastCheck::Unknown;
    }
    for (pa, &a) in w.edges().iter().enumerate() {
        for (pb, &b) in w2.edges().iter().enumerate() {
            let Some(x) = tree.shared_vertex(a, b) else {
                continue;
            };
            let (sa, sb) = (w.signs()[pa], w2.signs()[pb]);
            if sa == sb {
                continue;
            }
            // witness runs from the degree-0 edge to the degree -1 edge
            let (from, to) = if sa == 1 { (a, b) } else { (b, a) };
            let n_x = tree.degree(x);
            let witness = arc_len(tree, x, from, to);
            // composites with the differential entries next to `a` and `b`
            // must all vanish for the witness to be a chain map
            let survives = |edge: usize, neighbor: usize, incoming: bool| -> bool {
                let Some(y) = tree.shared_vertex(neighbor, edge) else {
                    unreachable!("walk neighbors share a vertex");
                };
                if y != x {
                    return true;
                }
                let composite = if incoming {
                    arc_len(tree, x, neighbor, edge) + witness
                } else {
                    witness + arc_len(tree, x, edge, neighbor)
                };
                composite > n_x
            };
            let mut obstructed = true;
            for (walk, pos, edge) in [(w, pa, a), (w2, pb, b)] {
                for npos in [pos.wrapping_sub(1), pos + 1] {
                    if npos >= walk.edges().len() {
                        continue;
                    }
                    let neighbor = walk.edges()[npos];
                    // the differential entry points toward the degree-0 side
                    let incoming = edge == from;
                    if !survives(edge, neighbor, incoming) {
                        obstructed = false;
                    }
                }
            }
            if obstructed {
                return FastCheck::Incompatible;
            }
        }
    }
    FastCheck::Unknown
}

/// Counterclockwise steps from `a` to `b` around their common vertex `x`.
fn arc_len(tree: &BrauerTree, x: u32, a: usize, b: usize) -> usize {
    let order = tree.cyclic_order(x);
    let pa = order.iter().position(|&e| e == a).unwrap();
    let pb = order.iter().position(|&e| e == b).unwrap();
    (pb + order.len() - pa) % order.len()
}

/// The tilting order: `T >= U` iff `Hom(T, U[1]) = 0`, checked summand by
/// summand.  Both arguments must be two-term tilting complexes, given as
/// pairwise-compatible walk complexes of full size.
pub fn order_ge(
    alg: &Algebra,
    t: &[TwoTermComplex],
    u: &[TwoTermComplex],
) -> Result<bool> {
    let n = alg.num_edges();
    if t.len() != n || u.len() != n {
        return Err(Error::NotTilting(format!(
            "expected {} summands, got {} and {}",
            n,
            t.len(),
            u.len()
        )));
    }
    for list in [t, u] {
        for (i, x) in list.iter().enumerate() {
            for y in &list[i + 1..] {
                if !is_pretilting_pair(alg, x, y)? {
                    return Err(Error::NotTilting("summands are not compatible".into()));
                }
            }
        }
    }
    for x in t {
        for y in u {
            if hom_dim(alg, x, y, 1)? != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::hom_basis;
    use crate::tree::{enumerate_plane_trees, BrauerTree};
    use crate::walks::{enumerate_signed_walks, to_complex};

    #[test]
    fn stalk_self_homs_vanish_at_nonzero_shift() {
        let tree = BrauerTree::line(1);
        let alg = hom_basis(&tree).unwrap();
        let x = TwoTermComplex::stalk(&alg, 0, true);
        assert_eq!(hom_dim(&alg, &x, &x, 1).unwrap(), 0);
        assert_eq!(hom_dim(&alg, &x, &x, -1).unwrap(), 0);
        assert_eq!(hom_dim(&alg, &x, &x, 0).unwrap(), 2);
    }

    #[test]
    fn stalk_against_its_shift_has_two_dimensional_hom() {
        // X = (0 -> P_1), Y = (P_1 -> 0): Hom(Y, X[1]) = End(P_1) with no
        // homotopies, so the pair {P_1, P_1[1]} is not pretilting
        let tree = BrauerTree::line(1);
        let alg = hom_basis(&tree).unwrap();
        let x = TwoTermComplex::stalk(&alg, 0, true);
        let y = TwoTermComplex::stalk(&alg, 0, false);
        assert_eq!(hom_dim(&alg, &x, &y, 1).unwrap(), 0);
        assert_eq!(hom_dim(&alg, &y, &x, 1).unwrap(), 2);
        assert!(!is_pretilting_pair(&alg, &x, &y).unwrap());
    }

    #[test]
    fn projectives_of_a_form_a_pretilting_pair() {
        let tree = BrauerTree::line(2);
        let alg = hom_basis(&tree).unwrap();
        let p1 = TwoTermComplex::stalk(&alg, 0, true);
        let p2 = TwoTermComplex::stalk(&alg, 1, true);
        assert!(is_pretilting_pair(&alg, &p1, &p2).unwrap());
    }

    #[test]
    fn two_edge_path_has_six_compatible_pairs() {
        let tree = BrauerTree::line(2);
        let alg = hom_basis(&tree).unwrap();
        let walks = enumerate_signed_walks(&tree);
        let complexes: Vec<_> = walks.iter().map(|w| to_complex(w, &alg)).collect();
        let mut pairs = 0;
        for i in 0..complexes.len() {
            for j in i + 1..complexes.len() {
                if is_pretilting_pair(&alg, &complexes[i], &complexes[j]).unwrap() {
                    pairs += 1;
                }
            }
        }
        assert_eq!(pairs, 6);
    }

    #[test]
    fn every_walk_complex_is_pretilting() {
        for n in 1..=4 {
            for tree in enumerate_plane_trees(n).unwrap() {
                let alg = hom_basis(&tree).unwrap();
                for w in enumerate_signed_walks(&tree) {
                    let c = to_complex(&w, &alg);
                    assert!(is_pretilting(&alg, &c).unwrap(), "walk {w:?}");
                }
            }
        }
    }

    #[test]
    fn serre_symmetry_of_shifted_homs() {
        // hom_dim(X, Y, 1) = hom_dim(Y, X, -1) across all walk pairs
        for n in 1..=3 {
            for tree in enumerate_plane_trees(n).unwrap() {
                let alg = hom_basis(&tree).unwrap();
                let complexes: Vec<_> = enumerate_signed_walks(&tree)
                    .iter()
                    .map(|w| to_complex(w, &alg))
                    .collect();
                for x in &complexes {
                    for y in &complexes {
                        assert_eq!(
                            hom_dim(&alg, x, y, 1).unwrap(),
                            hom_dim(&alg, y, x, -1).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn hom_dim_invariant_under_summand_permutation() {
        let tree = BrauerTree::line(3);
        let alg = hom_basis(&tree).unwrap();
        let walks = enumerate_signed_walks(&tree);
        let w = walks
            .iter()
            .find(|w| w.len() == 3)
            .expect("full walk exists");
        let c = to_complex(w, &alg);
        // swap the two degree-0 summands by hand
        let swapped = TwoTermComplex::new(
            &alg,
            c.neg().to_vec(),
            vec![c.pos()[1], c.pos()[0]],
            vec![c.diff()[1].clone(), c.diff()[0].clone()],
        );
        for other in walks.iter().map(|w| to_complex(w, &alg)) {
            for shift in [-1, 0, 1] {
                assert_eq!(
                    hom_dim(&alg, &c, &other, shift).unwrap(),
                    hom_dim(&alg, &swapped, &other, shift).unwrap()
                );
                assert_eq!(
                    hom_dim(&alg, &other, &c, shift).unwrap(),
                    hom_dim(&alg, &other, &swapped, shift).unwrap()
                );
            }
        }
    }

    #[test]
    fn fast_filter_examples() {
        let tree = BrauerTree::line(2);
        let walks = enumerate_signed_walks(&tree);
        let find = |g: [i64; 2]| {
            walks
                .iter()
                .find(|w| w.g_vector(2) == g.to_vec())
                .unwrap()
        };
        // shared edge, opposite signs
        let long_plus = find([1, -1]);
        let e1_minus = find([-1, 0]);
        assert_eq!(
            compatible_fast(&tree, long_plus, e1_minus),
            FastCheck::Incompatible
        );
        // disjoint adjacent edges with different signs
        let e1_plus = find([1, 0]);
        let e2_minus = find([0, -1]);
        assert_eq!(
            compatible_fast(&tree, e1_plus, e2_minus),
            FastCheck::Incompatible
        );
        // identical walks, same signs
        assert_eq!(
            compatible_fast(&tree, e1_plus, e1_plus),
            FastCheck::Unknown
        );
    }

    #[test]
    fn algebra_mismatch_is_detected() {
        let alg_a = hom_basis(&BrauerTree::line(2)).unwrap();
        let alg_b = hom_basis(&BrauerTree::line(3)).unwrap();
        let x = TwoTermComplex::stalk(&alg_a, 0, true);
        let y = TwoTermComplex::stalk(&alg_b, 0, true);
        assert!(matches!(
            hom_dim(&alg_a, &x, &y, 1),
            Err(Error::AlgebraMismatch)
        ));
    }

    #[test]
    fn order_ge_rejects_non_tilting_input() {
        let tree = BrauerTree::line(2);
        let alg = hom_basis(&tree).unwrap();
        let p1 = TwoTermComplex::stalk(&alg, 0, true);
        assert!(matches!(
            order_ge(&alg, &[p1.clone()], &[p1.clone()]),
            Err(Error::NotTilting(_))
        ));
    }
}
