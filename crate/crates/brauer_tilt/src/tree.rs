//! Brauer trees: plane trees with a counterclockwise cyclic ordering of the
//! edges at every vertex, a multiplicity, and an exceptional vertex.
//!
//! Edges are indexed `0..n` internally; the JSON interchange format uses the
//! contiguous ids `1..=n`.  Trees are immutable after validation and all
//! operations are pure.

use std::collections::BTreeMap;

use crate::{Error, Result};

/// A single validation failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeError {
    /// The underlying graph has a cycle, a loop, or a parallel edge.
    CyclicGraph(String),
    /// The underlying graph is not connected.
    Disconnected(String),
    /// A cyclic ordering does not list exactly the incident edges.
    BadCyclicOrder(String),
    /// The exceptional vertex is not a vertex of the tree.
    MissingExceptional(String),
    /// Multiplicity below 1.
    BadMultiplicity(String),
}

/// A validated Brauer tree.
///
/// Cyclic orderings are stored rotation-normalized (smallest edge index
/// first), so two representations of the same tree compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrauerTree {
    vertices: Vec<u32>,
    /// endpoints per edge index; never a loop
    edges: Vec<(u32, u32)>,
    /// vertex -> incident edge indices in counterclockwise order
    cyclic_order: BTreeMap<u32, Vec<usize>>,
    multiplicity: u32,
    exceptional: u32,
}

impl BrauerTree {
    /// Validates and builds a tree. `cyclic_order` lists edge indices
    /// (0-based) counterclockwise around each vertex.
    pub fn new(
        vertices: Vec<u32>,
        edges: Vec<(u32, u32)>,
        cyclic_order: BTreeMap<u32, Vec<usize>>,
        multiplicity: u32,
        exceptional: u32,
    ) -> std::result::Result<Self, Vec<TreeError>> {
        let mut tree = BrauerTree {
            vertices,
            edges,
            cyclic_order,
            multiplicity,
            exceptional,
        };
        let errors = tree.validate();
        if errors.is_empty() {
            tree.normalize_rotations();
            Ok(tree)
        } else {
            Err(errors)
        }
    }

    /// Returns all violated invariants; empty means the tree is valid.
    pub fn validate(&self) -> Vec<TreeError> {
        let mut errors = Vec::new();
        let vset: std::collections::BTreeSet<u32> = self.vertices.iter().copied().collect();
        if vset.len() != self.vertices.len() {
            errors.push(TreeError::BadCyclicOrder("duplicate vertex ids".into()));
        }
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if u == v {
                errors.push(TreeError::CyclicGraph(format!("edge {} is a loop", e + 1)));
            }
            if !vset.contains(&u) || !vset.contains(&v) {
                errors.push(TreeError::BadCyclicOrder(format!(
                    "edge {} has unknown endpoint",
                    e + 1
                )));
            }
        }
        if !errors.is_empty() {
            return errors;
        }
        // connectivity by union-find over vertex positions
        let idx: BTreeMap<u32, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut merges = 0usize;
        for &(u, v) in &self.edges {
            let (ru, rv) = (find(&mut parent, idx[&u]), find(&mut parent, idx[&v]));
            if ru != rv {
                parent[ru] = rv;
                merges += 1;
            }
        }
        if merges + 1 != self.vertices.len() {
            errors.push(TreeError::Disconnected(format!(
                "{} connected components",
                self.vertices.len() - merges
            )));
        }
        if self.edges.len() + 1 != self.vertices.len() {
            errors.push(TreeError::CyclicGraph(format!(
                "{} edges on {} vertices",
                self.edges.len(),
                self.vertices.len()
            )));
        }
        // cyclic orderings must list exactly the incident edges, once each
        let mut incident: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for &v in &self.vertices {
            incident.insert(v, Vec::new());
        }
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            incident.get_mut(&u).map(|l| l.push(e));
            incident.get_mut(&v).map(|l| l.push(e));
        }
        for &v in &self.vertices {
            let Some(order) = self.cyclic_order.get(&v) else {
                errors.push(TreeError::BadCyclicOrder(format!(
                    "vertex {v} has no cyclic order"
                )));
                continue;
            };
            let mut sorted = order.clone();
            sorted.sort_unstable();
            let mut expect = incident[&v].clone();
            expect.sort_unstable();
            if sorted != expect {
                errors.push(TreeError::BadCyclicOrder(format!(
                    "cyclic order at vertex {v} does not match its incident edges"
                )));
            }
        }
        for v in self.cyclic_order.keys() {
            if !vset.contains(v) {
                errors.push(TreeError::BadCyclicOrder(format!(
                    "cyclic order given for unknown vertex {v}"
                )));
            }
        }
        if !vset.contains(&self.exceptional) {
            errors.push(TreeError::MissingExceptional(format!(
                "exceptional vertex {} not in the tree",
                self.exceptional
            )));
        }
        if self.multiplicity < 1 {
            errors.push(TreeError::BadMultiplicity(
                "multiplicity must be >= 1".into(),
            ));
        }
        errors
    }

    fn normalize_rotations(&mut self) {
        for order in self.cyclic_order.values_mut() {
            let min_pos = order
                .iter()
                .enumerate()
                .min_by_key(|&(_, &e)| e)
                .map(|(i, _)| i);
            if let Some(pos) = min_pos {
                order.rotate_left(pos);
            }
        }
    }

    /// Linear tree with `n` edges: vertices `0..=n`, edge `i` joins `i` and `i+1`.
    pub fn line(n: usize) -> Self {
        assert!(n >= 1);
        let vertices: Vec<u32> = (0..=n as u32).collect();
        let edges: Vec<(u32, u32)> = (0..n).map(|i| (i as u32, i as u32 + 1)).collect();
        let mut cyclic_order = BTreeMap::new();
        cyclic_order.insert(0, vec![0]);
        for v in 1..n {
            cyclic_order.insert(v as u32, vec![v - 1, v]);
        }
        cyclic_order.insert(n as u32, vec![n - 1]);
        BrauerTree::new(vertices, edges, cyclic_order, 1, 0).expect("line tree is valid")
    }

    /// Star with `n` edges around the hub vertex 0, in cyclic order 1..=n.
    pub fn star(n: usize) -> Self {
        assert!(n >= 1);
        let vertices: Vec<u32> = (0..=n as u32).collect();
        let edges: Vec<(u32, u32)> = (0..n).map(|i| (0, i as u32 + 1)).collect();
        let mut cyclic_order = BTreeMap::new();
        cyclic_order.insert(0, (0..n).collect());
        for v in 1..=n {
            cyclic_order.insert(v as u32, vec![v - 1]);
        }
        BrauerTree::new(vertices, edges, cyclic_order, 1, 0).expect("star tree is valid")
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn endpoints(&self, e: usize) -> (u32, u32) {
        self.edges[e]
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    pub fn exceptional(&self) -> u32 {
        self.exceptional
    }

    pub fn cyclic_order(&self, v: u32) -> &[usize] {
        &self.cyclic_order[&v]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.cyclic_order[&v].len()
    }

    /// Next edge counterclockwise after `e` around `v`.
    pub fn sigma(&self, v: u32, e: usize) -> usize {
        let order = &self.cyclic_order[&v];
        let pos = order
            .iter()
            .position(|&x| x == e)
            .expect("edge incident to vertex");
        order[(pos + 1) % order.len()]
    }

    pub fn other_end(&self, e: usize, v: u32) -> u32 {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    /// Edges `a != b` share at most one vertex in a tree.
    pub fn shared_vertex(&self, a: usize, b: usize) -> Option<u32> {
        let (a0, a1) = self.edges[a];
        let (b0, b1) = self.edges[b];
        if a0 == b0 || a0 == b1 {
            Some(a0)
        } else if a1 == b0 || a1 == b1 {
            Some(a1)
        } else {
            None
        }
    }

    /// The Kauer move of edge `i`: each endpoint `x` with `sigma_x(i) = j != i`
    /// slides to the far endpoint of `j`, where `i` is inserted into the
    /// cyclic order immediately after `j`; degree-one endpoints stay put.
    pub fn kauer_move(&self, i: usize) -> Result<BrauerTree> {
        if i >= self.edges.len() {
            return Err(Error::UnknownEdge(i + 1));
        }
        let (x1, x2) = self.edges[i];
        // (old endpoint, Some((target vertex, edge to insert after)))
        let plan = |x: u32| -> Option<(u32, usize)> {
            let j = self.sigma(x, i);
            if j == i {
                None
            } else {
                Some((self.other_end(j, x), j))
            }
        };
        let moves = [(x1, plan(x1)), (x2, plan(x2))];
        let mut cyclic_order = self.cyclic_order.clone();
        let mut new_ends = [x1, x2];
        for (slot, &(x, ref mv)) in moves.iter().enumerate() {
            if let Some((y, j)) = *mv {
                cyclic_order.get_mut(&x).unwrap().retain(|&e| e != i);
                let order = cyclic_order.get_mut(&y).unwrap();
                let pos = order.iter().position(|&e| e == j).unwrap();
                order.insert(pos + 1, i);
                new_ends[slot] = y;
            }
        }
        let mut edges = self.edges.clone();
        edges[i] = (new_ends[0], new_ends[1]);
        let moved = BrauerTree::new(
            self.vertices.clone(),
            edges,
            cyclic_order,
            self.multiplicity,
            self.exceptional,
        );
        // the move always produces a tree; anything else is a bug
        Ok(moved.expect("Kauer move created a cycle"))
    }

    /// Shape key: minimal plane-tree encoding over all rootings, ignoring the
    /// multiplicity and the exceptional vertex.  Two trees are isomorphic
    /// (rotation only, no reflection) iff their keys agree.
    pub fn canonical_key(&self) -> String {
        self.best_rooting().0
    }

    /// Canonical relabeling: vertices in preorder of the minimal encoding,
    /// edge ids in traversal order, exceptional vertex mapped along (ties
    /// broken toward the smallest image).
    pub fn canonical(&self) -> BrauerTree {
        let (_, root, first) = self.best_rooting();
        self.relabel_from(root, first)
    }

    /// min (encoding, exceptional image) over all (root, first edge) choices
    fn best_rooting(&self) -> (String, u32, usize) {
        let mut best: Option<(String, usize, u32, usize)> = None;
        for &v in &self.vertices {
            for &e in &self.cyclic_order[&v] {
                let enc = self.encode_from(v, e);
                let s_img = self.preorder_index_of_exceptional(v, e);
                let cand = (enc, s_img, v, e);
                let better = match &best {
                    None => true,
                    Some((be, bs, _, _)) => (&cand.0, cand.1) < (be, *bs),
                };
                if better {
                    best = Some(cand);
                }
            }
        }
        let (enc, _, root, first) = best.expect("tree has at least one edge");
        (enc, root, first)
    }

    fn encode_from(&self, root: u32, first: usize) -> String {
        let mut out = String::with_capacity(2 * self.edges.len());
        let order = &self.cyclic_order[&root];
        let start = order.iter().position(|&x| x == first).unwrap();
        for t in 0..order.len() {
            let e = order[(start + t) % order.len()];
            self.encode_subtree(self.other_end(e, root), e, &mut out);
        }
        out
    }

    fn encode_subtree(&self, v: u32, in_edge: usize, out: &mut String) {
        out.push('(');
        let order = &self.cyclic_order[&v];
        let pos = order.iter().position(|&x| x == in_edge).unwrap();
        for t in 1..order.len() {
            let e = order[(pos + t) % order.len()];
            self.encode_subtree(self.other_end(e, v), e, out);
        }
        out.push(')');
    }

    fn preorder_index_of_exceptional(&self, root: u32, first: usize) -> usize {
        let mut count = 0usize;
        let mut found = None;
        self.preorder_walk(root, first, &mut |v| {
            if v == self.exceptional && found.is_none() {
                found = Some(count);
            }
            count += 1;
        });
        found.expect("exceptional vertex visited")
    }

    fn preorder_walk(&self, root: u32, first: usize, visit: &mut impl FnMut(u32)) {
        visit(root);
        let order = &self.cyclic_order[&root];
        let start = order.iter().position(|&x| x == first).unwrap();
        for t in 0..order.len() {
            let e = order[(start + t) % order.len()];
            self.preorder_subtree(self.other_end(e, root), e, visit);
        }
    }

    fn preorder_subtree(&self, v: u32, in_edge: usize, visit: &mut impl FnMut(u32)) {
        visit(v);
        let order = &self.cyclic_order[&v];
        let pos = order.iter().position(|&x| x == in_edge).unwrap();
        for t in 1..order.len() {
            let e = order[(pos + t) % order.len()];
            self.preorder_subtree(self.other_end(e, v), e, visit);
        }
    }

    fn relabel_from(&self, root: u32, first: usize) -> BrauerTree {
        struct Ctx<'a> {
            tree: &'a BrauerTree,
            vmap: BTreeMap<u32, u32>,
            edges: Vec<(u32, u32)>,
            cyclic_order: BTreeMap<u32, Vec<usize>>,
        }
        // traversal order mirrors encode_from; edge ids are assigned the
        // moment an edge is first crossed, vertices in preorder
        fn go(ctx: &mut Ctx, v: u32, in_edge_new: usize, in_edge_old: usize) {
            let new_v = ctx.vmap.len() as u32;
            ctx.vmap.insert(v, new_v);
            let order = ctx.tree.cyclic_order[&v].clone();
            let pos = order.iter().position(|&x| x == in_edge_old).unwrap();
            let mut new_order = vec![in_edge_new];
            for t in 1..order.len() {
                let e = order[(pos + t) % order.len()];
                let new_e = ctx.edges.len();
                ctx.edges.push((new_v, 0));
                new_order.push(new_e);
                go(ctx, ctx.tree.other_end(e, v), new_e, e);
                ctx.edges[new_e].1 = ctx.vmap[&ctx.tree.other_end(e, v)];
            }
            ctx.cyclic_order.insert(new_v, new_order);
        }

        let mut ctx = Ctx {
            tree: self,
            vmap: BTreeMap::from([(root, 0u32)]),
            edges: Vec::new(),
            cyclic_order: BTreeMap::new(),
        };
        let order = self.cyclic_order[&root].clone();
        let start = order.iter().position(|&x| x == first).unwrap();
        let mut root_order = Vec::with_capacity(order.len());
        for t in 0..order.len() {
            let e = order[(start + t) % order.len()];
            let new_e = ctx.edges.len();
            ctx.edges.push((0, 0));
            root_order.push(new_e);
            let w = self.other_end(e, root);
            go(&mut ctx, w, new_e, e);
            ctx.edges[new_e].1 = ctx.vmap[&w];
        }
        ctx.cyclic_order.insert(0, root_order);

        let vertices: Vec<u32> = (0..self.vertices.len() as u32).collect();
        BrauerTree::new(
            vertices,
            ctx.edges,
            ctx.cyclic_order,
            self.multiplicity,
            ctx.vmap[&self.exceptional],
        )
        .expect("relabeling preserves validity")
    }

    /// With multiplicity forced to 1 and the exceptional vertex moved to the
    /// canonical vertex 0 (irrelevant when the multiplicity is 1).
    pub fn with_canonical_exceptional(mut self) -> BrauerTree {
        self.exceptional = self.vertices[0];
        self
    }
}

/// All multiplicity-one Brauer trees with `n` edges, pairwise non-isomorphic
/// (isomorphism preserves incidence and cyclic orders up to rotation), each
/// in canonical form with exceptional vertex 0, in a deterministic order.
pub fn enumerate_plane_trees(n: usize) -> Result<Vec<BrauerTree>> {
    if !(1..=8).contains(&n) {
        return Err(Error::OutOfRange(n, 1, 8));
    }
    let mut seen = BTreeMap::new();
    for forest in forests(n) {
        let tree = rooted_forest_to_tree(&forest);
        let key = tree.canonical_key();
        seen.entry(key)
            .or_insert_with(|| tree.canonical().with_canonical_exceptional());
    }
    Ok(seen.into_values().collect())
}

/// Ordered rooted plane tree, stored as the list of child subtrees.
#[derive(Clone)]
struct Rooted(Vec<Rooted>);

/// All ordered forests with `n` edges in total (each tree contributes its
/// root edge plus its internal edges).
fn forests(n: usize) -> Vec<Vec<Rooted>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for inner in 0..n {
        for first in forests(inner) {
            for rest in forests(n - 1 - inner) {
                let mut f = Vec::with_capacity(rest.len() + 1);
                f.push(Rooted(first.clone()));
                f.extend(rest.iter().cloned());
                out.push(f);
            }
        }
    }
    out
}

fn rooted_forest_to_tree(forest: &[Rooted]) -> BrauerTree {
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut cyclic_order: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    let mut next_vertex = 1u32;

    fn attach(
        parent: u32,
        t: &Rooted,
        edges: &mut Vec<(u32, u32)>,
        cyclic_order: &mut BTreeMap<u32, Vec<usize>>,
        next_vertex: &mut u32,
    ) -> usize {
        let v = *next_vertex;
        *next_vertex += 1;
        let e = edges.len();
        edges.push((parent, v));
        let mut order = vec![e];
        for child in &t.0 {
            let ce = attach(v, child, edges, cyclic_order, next_vertex);
            order.push(ce);
        }
        cyclic_order.insert(v, order);
        e
    }

    let mut root_order = Vec::new();
    for t in forest {
        let e = attach(0, t, &mut edges, &mut cyclic_order, &mut next_vertex);
        root_order.push(e);
    }
    cyclic_order.insert(0, root_order);
    let vertices: Vec<u32> = (0..next_vertex).collect();
    BrauerTree::new(vertices, edges, cyclic_order, 1, 0).expect("rooted tree is valid")
}

/// Serializes to the interchange JSON format, byte-stable: fixed key order,
/// vertices in stored order, cyclic_order keys ascending, edge ids 1-based.
pub fn serialize_tree(tree: &BrauerTree) -> String {
    let mut s = String::new();
    s.push_str("{\"vertices\":[");
    for (i, v) in tree.vertices().iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(&v.to_string());
    }
    s.push_str("],\"edges\":[");
    for e in 0..tree.num_edges() {
        if e > 0 {
            s.push(',');
        }
        let (u, v) = tree.endpoints(e);
        s.push_str(&format!("{{\"id\":{},\"ends\":[{},{}]}}", e + 1, u, v));
    }
    s.push_str("],\"cyclic_order\":{");
    let mut keys: Vec<u32> = tree.vertices().to_vec();
    keys.sort_unstable();
    for (i, v) in keys.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(&format!("\"{v}\":["));
        for (j, e) in tree.cyclic_order(*v).iter().enumerate() {
            if j > 0 {
                s.push(',');
            }
            s.push_str(&(e + 1).to_string());
        }
        s.push(']');
    }
    s.push_str(&format!(
        "}},\"multiplicity\":{},\"exceptional\":{}}}\n",
        tree.multiplicity(),
        tree.exceptional()
    ));
    s
}

/// Parses the interchange JSON format.
pub fn parse_tree(text: &str) -> Result<BrauerTree> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::ParseError {
            location: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
    let obj = value.as_object().ok_or_else(|| parse_err("$", "expected an object"))?;

    let vertices: Vec<u32> = obj
        .get("vertices")
        .and_then(|v| v.as_array())
        .ok_or_else(|| parse_err("vertices", "expected an array"))?
        .iter()
        .map(|v| {
            v.as_u64()
                .and_then(|x| u32::try_from(x).ok())
                .ok_or_else(|| parse_err("vertices", "expected a nonnegative integer"))
        })
        .collect::<Result<_>>()?;

    let raw_edges = obj
        .get("edges")
        .and_then(|v| v.as_array())
        .ok_or_else(|| parse_err("edges", "expected an array"))?;
    let n = raw_edges.len();
    let mut edges: Vec<Option<(u32, u32)>> = vec![None; n];
    for (i, e) in raw_edges.iter().enumerate() {
        let loc = format!("edges[{i}]");
        let eobj = e
            .as_object()
            .ok_or_else(|| parse_err(&loc, "expected an object"))?;
        let id = eobj
            .get("id")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| parse_err(&loc, "missing integer id"))? as usize;
        if !(1..=n).contains(&id) {
            return Err(parse_err(&loc, "edge ids must be 1..n contiguous"));
        }
        let ends = eobj
            .get("ends")
            .and_then(|v| v.as_array())
            .filter(|a| a.len() == 2)
            .ok_or_else(|| parse_err(&loc, "expected ends: [v, v]"))?;
        let u = ends[0]
            .as_u64()
            .and_then(|x| u32::try_from(x).ok())
            .ok_or_else(|| parse_err(&loc, "bad endpoint"))?;
        let v = ends[1]
            .as_u64()
            .and_then(|x| u32::try_from(x).ok())
            .ok_or_else(|| parse_err(&loc, "bad endpoint"))?;
        if edges[id - 1].is_some() {
            return Err(parse_err(&loc, "duplicate edge id"));
        }
        edges[id - 1] = Some((u, v));
    }
    let edges: Vec<(u32, u32)> = edges
        .into_iter()
        .map(|e| e.ok_or_else(|| parse_err("edges", "edge ids must be 1..n contiguous")))
        .collect::<Result<_>>()?;

    let raw_order = obj
        .get("cyclic_order")
        .and_then(|v| v.as_object())
        .ok_or_else(|| parse_err("cyclic_order", "expected an object"))?;
    let mut cyclic_order = BTreeMap::new();
    for (k, v) in raw_order {
        let loc = format!("cyclic_order.{k}");
        let vertex: u32 = k
            .parse()
            .map_err(|_| parse_err(&loc, "key must be a vertex id"))?;
        let list = v
            .as_array()
            .ok_or_else(|| parse_err(&loc, "expected an array of edge ids"))?
            .iter()
            .map(|x| {
                x.as_u64()
                    .map(|id| id as usize)
                    .filter(|id| (1..=n).contains(id))
                    .map(|id| id - 1)
                    .ok_or_else(|| parse_err(&loc, "edge id out of range"))
            })
            .collect::<Result<Vec<usize>>>()?;
        cyclic_order.insert(vertex, list);
    }

    let multiplicity = obj
        .get("multiplicity")
        .and_then(|v| v.as_u64())
        .and_then(|x| u32::try_from(x).ok())
        .ok_or_else(|| parse_err("multiplicity", "expected a positive integer"))?;
    let exceptional = obj
        .get("exceptional")
        .and_then(|v| v.as_u64())
        .and_then(|x| u32::try_from(x).ok())
        .ok_or_else(|| parse_err("exceptional", "expected a vertex id"))?;

    BrauerTree::new(vertices, edges, cyclic_order, multiplicity, exceptional)
        .map_err(Error::InvalidTree)
}

fn parse_err(location: &str, message: &str) -> Error {
    Error::ParseError {
        location: location.to_string(),
        message: message.to_string(),
    }
}
