//! Alternating signed walks: simple walks in the tree whose edges carry
//! strictly alternating signs.  They parametrize the indecomposable two-term
//! pretilting complexes; the sign pattern is the g-vector.

use crate::algebra::{Algebra, LinComb};
use crate::homotopy::TwoTermComplex;
use crate::tree::BrauerTree;

/// A simple walk with alternating signs, stored from its smaller endpoint
/// vertex to the larger one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedWalk {
    /// edge indices in path order
    edges: Vec<usize>,
    /// signs aligned with `edges`, strictly alternating
    signs: Vec<i8>,
    endpoints: (u32, u32),
}

impl SignedWalk {
    /// Builds a walk, checking simplicity and alternation against the tree.
    pub fn new(tree: &BrauerTree, edges: Vec<usize>, first_sign: i8) -> Self {
        assert!(!edges.is_empty());
        assert!(first_sign == 1 || first_sign == -1);
        // endpoints and simplicity
        let mut vertices = Vec::with_capacity(edges.len() + 1);
        if edges.len() == 1 {
            let (u, v) = tree.endpoints(edges[0]);
            vertices.push(u.min(v));
            vertices.push(u.max(v));
        } else {
            let shared0 = tree
                .shared_vertex(edges[0], edges[1])
                .expect("consecutive edges must meet");
            vertices.push(tree.other_end(edges[0], shared0));
            vertices.push(shared0);
            for w in edges.windows(2) {
                let x = tree.shared_vertex(w[0], w[1]).expect("walk broken");
                assert_eq!(x, *vertices.last().unwrap(), "walk not consecutive");
                vertices.push(tree.other_end(w[1], x));
            }
        }
        let mut sorted = vertices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), vertices.len(), "walk repeats a vertex");

        let (mut edges, mut first_sign) = (edges, first_sign);
        let (a, b) = (vertices[0], *vertices.last().unwrap());
        if a > b {
            edges.reverse();
            if edges.len() % 2 == 0 {
                first_sign = -first_sign;
            }
        }
        let signs: Vec<i8> = (0..edges.len())
            .map(|k| if k % 2 == 0 { first_sign } else { -first_sign })
            .collect();
        SignedWalk {
            edges,
            signs,
            endpoints: (a.min(b), a.max(b)),
        }
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn endpoints(&self) -> (u32, u32) {
        self.endpoints
    }

    pub fn sign_of(&self, edge: usize) -> Option<i8> {
        self.edges
            .iter()
            .position(|&e| e == edge)
            .map(|p| self.signs[p])
    }

    /// g-vector: the sign on each walk edge, zero elsewhere.
    pub fn g_vector(&self, n: usize) -> Vec<i64> {
        let mut g = vec![0i64; n];
        for (&e, &s) in self.edges.iter().zip(&self.signs) {
            g[e] = i64::from(s);
        }
        g
    }

    /// The walk with all signs negated; an involution with opposite g-vector.
    pub fn dual(&self) -> SignedWalk {
        SignedWalk {
            edges: self.edges.clone(),
            signs: self.signs.iter().map(|s| -s).collect(),
            endpoints: self.endpoints,
        }
    }
}

/// All alternating signed walks of the tree: one walk per unordered vertex
/// pair (the tree path between them) and sign choice, so n(n+1) in total,
/// sorted by (endpoints, first sign +1 before -1).
pub fn enumerate_signed_walks(tree: &BrauerTree) -> Vec<SignedWalk> {
    let mut verts: Vec<u32> = tree.vertices().to_vec();
    verts.sort_unstable();
    let mut walks = Vec::with_capacity(tree.num_edges() * (tree.num_edges() + 1));
    for (i, &u) in verts.iter().enumerate() {
        for &v in &verts[i + 1..] {
            let path = tree_path(tree, u, v);
            for sign in [1i8, -1] {
                walks.push(SignedWalk::new(tree, path.clone(), sign));
            }
        }
    }
    walks
}

/// Edge path between two vertices of the tree (unique).
fn tree_path(tree: &BrauerTree, from: u32, to: u32) -> Vec<usize> {
    let mut stack = vec![from];
    let mut parent_edge: std::collections::BTreeMap<u32, usize> = Default::default();
    let mut seen: std::collections::BTreeSet<u32> = [from].into();
    while let Some(x) = stack.pop() {
        if x == to {
            break;
        }
        for &e in tree.cyclic_order(x) {
            let y = tree.other_end(e, x);
            if seen.insert(y) {
                parent_edge.insert(y, e);
                stack.push(y);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = to;
    while cur != from {
        let e = parent_edge[&cur];
        path.push(e);
        cur = tree.other_end(e, cur);
    }
    path.reverse();
    path
}

/// Realizes a walk as its two-term complex: negatively signed edges in
/// degree -1, positive ones in degree 0, with the one-dimensional Hom
/// generator between walk-adjacent edges as differential entries.
pub fn to_complex(walk: &SignedWalk, alg: &Algebra) -> TwoTermComplex {
    let neg: Vec<usize> = walk
        .edges()
        .iter()
        .zip(walk.signs())
        .filter(|(_, &s)| s == -1)
        .map(|(&e, _)| e)
        .collect();
    let pos: Vec<usize> = walk
        .edges()
        .iter()
        .zip(walk.signs())
        .filter(|(_, &s)| s == 1)
        .map(|(&e, _)| e)
        .collect();
    // positive and negative supports are disjoint by alternation
    debug_assert!(neg.iter().all(|e| !pos.contains(e)));
    let position = |e: usize| walk.edges().iter().position(|&x| x == e).unwrap();
    let mut diff = vec![vec![LinComb::zero(); neg.len()]; pos.len()];
    for (i, &a) in neg.iter().enumerate() {
        for (j, &b) in pos.iter().enumerate() {
            if position(a).abs_diff(position(b)) == 1 {
                let basis = alg.hom(a, b);
                debug_assert_eq!(basis.len(), 1);
                diff[j][i] = LinComb::single(basis[0]);
            }
        }
    }
    TwoTermComplex::new(alg, neg, pos, diff)
}

/// CSV export of walks with g-vectors (1-based edge ids).
pub fn walks_csv(tree: &BrauerTree, walks: &[SignedWalk]) -> String {
    let n = tree.num_edges();
    let mut s = String::from("walk,edges,signs,g_vector\n");
    for (i, w) in walks.iter().enumerate() {
        let edges: Vec<String> = w.edges().iter().map(|e| (e + 1).to_string()).collect();
        let signs: Vec<String> = w.signs().iter().map(|x| format!("{x:+}")).collect();
        let g: Vec<String> = w.g_vector(n).iter().map(|x| x.to_string()).collect();
        s.push_str(&format!(
            "{},{},{},{}\n",
            i,
            edges.join(" "),
            signs.join(" "),
            g.join(" ")
        ));
    }
    s
}

/// JSON export of walks with g-vectors.
pub fn walks_json(tree: &BrauerTree, walks: &[SignedWalk]) -> serde_json::Value {
    let n = tree.num_edges();
    serde_json::Value::Array(
        walks
            .iter()
            .enumerate()
            .map(|(i, w)| {
                serde_json::json!({
                    "walk": i,
                    "edges": w.edges().iter().map(|e| e + 1).collect::<Vec<_>>(),
                    "signs": w.signs(),
                    "g_vector": w.g_vector(n),
                })
            })
            .collect(),
    )
}
