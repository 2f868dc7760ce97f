use std::fmt;

use super::{BracketTree, VertexRef, NIL};
use crate::{Error, Result};

/// A nonempty d-ary plane tree.
///
/// Stored as a flat `size * arity` slot table in preorder (a vertex, then the
/// subtrees of slots 1..=d in order), with node 0 as the root. Two trees are
/// equal exactly when they are isomorphic as d-ary plane trees.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DaryTree {
    arity: usize,
    slots: Vec<u32>,
}

impl fmt::Debug for DaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DaryTree({})", self.encode())
    }
}

impl DaryTree {
    /// The one-vertex tree.
    pub fn single(arity: usize) -> Self {
        assert!(arity >= 2, "arity must be at least 2");
        DaryTree {
            arity,
            slots: vec![NIL; arity],
        }
    }

    /// Builds from an arena whose node 0 is the root; unreachable nodes are dropped
    /// and the rest relabeled in preorder.
    pub(crate) fn from_arena(arity: usize, arena: &[u32]) -> Self {
        let mut order = Vec::with_capacity(arena.len() / arity);
        let mut remap = vec![NIL; arena.len() / arity];
        let mut stack = vec![0u32];
        while let Some(v) = stack.pop() {
            remap[v as usize] = order.len() as u32;
            order.push(v);
            let row = &arena[v as usize * arity..(v as usize + 1) * arity];
            for &c in row.iter().rev() {
                if c != NIL {
                    stack.push(c);
                }
            }
        }
        let mut slots = Vec::with_capacity(order.len() * arity);
        for &v in &order {
            let row = &arena[v as usize * arity..(v as usize + 1) * arity];
            slots.extend(
                row.iter()
                    .map(|&c| if c == NIL { NIL } else { remap[c as usize] }),
            );
        }
        DaryTree { arity, slots }
    }

    /// A root whose `i`-th slot holds `subs[i]` (1-based slot `i + 1`).
    pub fn join(arity: usize, subs: &[Option<&DaryTree>]) -> Self {
        assert_eq!(subs.len(), arity, "one entry per slot");
        let mut slots = vec![NIL; arity];
        let mut offset = 1u32;
        for (s, sub) in subs.iter().enumerate() {
            if let Some(t) = sub {
                assert_eq!(t.arity, arity, "arity mismatch in join");
                slots[s] = offset;
                slots.extend(
                    t.slots
                        .iter()
                        .map(|&c| if c == NIL { NIL } else { c + offset }),
                );
                offset += t.size() as u32;
            }
        }
        DaryTree { arity, slots }
    }

    /// The path whose i-th edge from the top has type `types[i]`.
    pub fn path(arity: usize, types: &[usize]) -> Result<Self> {
        let mut t = DaryTree::single(arity);
        for &ty in types.iter().rev() {
            if ty == 0 || ty > arity {
                return Err(Error::SlotOutOfRange { slot: ty, arity });
            }
            let mut subs = vec![None; arity];
            subs[ty - 1] = Some(&t);
            t = DaryTree::join(arity, &subs);
        }
        Ok(t)
    }

    /// The perfect tree of height `h`: all `d^r` vertices present at each depth `r <= h`.
    pub fn perfect(arity: usize, h: usize) -> Self {
        let mut t = DaryTree::single(arity);
        for _ in 0..h {
            let subs = vec![Some(&t); arity];
            t = DaryTree::join(arity, &subs);
        }
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn size(&self) -> usize {
        self.slots.len() / self.arity
    }

    fn row(&self, v: usize) -> &[u32] {
        &self.slots[v * self.arity..(v + 1) * self.arity]
    }

    /// Child of vertex `v` in 1-based slot `slot`.
    pub fn child(&self, v: usize, slot: usize) -> Option<usize> {
        match self.row(v)[slot - 1] {
            NIL => None,
            c => Some(c as usize),
        }
    }

    /// `(slot, child)` pairs of `v` in slot order, slots 1-based.
    pub fn children(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.row(v)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != NIL)
            .map(|(s, &c)| (s + 1, c as usize))
    }

    pub fn num_children(&self, v: usize) -> usize {
        self.row(v).iter().filter(|&&c| c != NIL).count()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.row(v).iter().all(|&c| c == NIL)
    }

    /// The set of slot types with a nonempty subtree at `v`, ascending.
    pub fn chi_of(&self, v: usize) -> Vec<usize> {
        self.children(v).map(|(s, _)| s).collect()
    }

    pub fn chi(&self, at: &VertexRef) -> Result<Vec<usize>> {
        Ok(self.chi_of(self.resolve(at)?))
    }

    /// `(parent, slot)` for every vertex; `None` at the root.
    pub fn parents(&self) -> Vec<Option<(usize, usize)>> {
        let mut parents = vec![None; self.size()];
        for v in 0..self.size() {
            for (s, c) in self.children(v) {
                parents[c] = Some((v, s));
            }
        }
        parents
    }

    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.size()];
        // preorder: parents precede children
        for v in 0..self.size() {
            for (_, c) in self.children(v) {
                depth[c] = depth[v] + 1;
            }
        }
        depth
    }

    pub fn height(&self) -> usize {
        self.depths().into_iter().max().unwrap_or(0)
    }

    /// Number of vertices in the subtree of each vertex.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut sz = vec![1; self.size()];
        for v in (0..self.size()).rev() {
            for (_, c) in self.children(v) {
                sz[v] += sz[c];
            }
        }
        sz
    }

    pub fn resolve(&self, at: &VertexRef) -> Result<usize> {
        let mut v = 0;
        for &s in at.path() {
            if s == 0 || s > self.arity {
                return Err(Error::UnresolvedVertex(at.to_string()));
            }
            v = self
                .child(v, s)
                .ok_or_else(|| Error::UnresolvedVertex(at.to_string()))?;
        }
        Ok(v)
    }

    pub fn vertex_ref(&self, v: usize) -> VertexRef {
        let parents = self.parents();
        let mut path = Vec::new();
        let mut cur = v;
        while let Some((p, s)) = parents[cur] {
            path.push(s);
            cur = p;
        }
        path.reverse();
        VertexRef::new(path)
    }

    /// Leaves from left to right.
    pub fn leaves(&self) -> Vec<VertexRef> {
        (0..self.size())
            .filter(|&v| self.is_leaf(v))
            .map(|v| self.vertex_ref(v))
            .collect()
    }

    /// Vertex ids in postorder (slot subtrees left to right, then the vertex).
    pub fn postorder(&self) -> Vec<usize> {
        fn walk(t: &DaryTree, v: usize, out: &mut Vec<usize>) {
            for (_, c) in t.children(v) {
                walk(t, c, out);
            }
            out.push(v);
        }
        let mut out = Vec::with_capacity(self.size());
        walk(self, 0, &mut out);
        out
    }

    pub(crate) fn subtree_at(&self, v: usize) -> DaryTree {
        // a preorder subtree is the contiguous block starting at v
        let n = self.subtree_sizes()[v];
        let base = v as u32;
        let slots = self.slots[v * self.arity..(v + n) * self.arity]
            .iter()
            .map(|&c| if c == NIL { NIL } else { c - base })
            .collect();
        DaryTree {
            arity: self.arity,
            slots,
        }
    }

    /// The subtree rooted at `at`.
    pub fn subtree(&self, at: &VertexRef) -> Result<DaryTree> {
        Ok(self.subtree_at(self.resolve(at)?))
    }

    /// Identifies the root of `sub` with `v`; sub's root subtrees land in their own slots.
    fn graft(&self, v: usize, sub: &DaryTree, at: &VertexRef) -> Result<DaryTree> {
        if sub.arity != self.arity {
            return Err(Error::ArityMismatch(self.arity, sub.arity));
        }
        let d = self.arity;
        let offset = self.size() as u32;
        let mut arena = self.slots.clone();
        arena.extend(
            sub.slots
                .iter()
                .map(|&c| if c == NIL { NIL } else { c + offset }),
        );
        for (s, c) in sub.children(0) {
            let cell = &mut arena[v * d + s - 1];
            if *cell != NIL {
                return Err(Error::SlotCollision(at.to_string()));
            }
            *cell = c as u32 + offset;
        }
        Ok(DaryTree::from_arena(d, &arena))
    }

    /// Glues `sub` to the leaf `at`.
    pub fn glue(&self, at: &VertexRef, sub: &DaryTree) -> Result<DaryTree> {
        let v = self.resolve(at)?;
        if !self.is_leaf(v) {
            return Err(Error::NotALeaf(at.to_string()));
        }
        self.graft(v, sub, at)
    }

    /// Glues `sub` to an arbitrary vertex whose occupied slots are disjoint from
    /// those of sub's root.
    pub fn attach_merge(&self, at: &VertexRef, sub: &DaryTree) -> Result<DaryTree> {
        let v = self.resolve(at)?;
        self.graft(v, sub, at)
    }

    /// Forgets empty slots and edge types.
    pub fn forget(&self) -> BracketTree {
        // d-ary preorder visits children in slot order, so ids carry over
        let kids = (0..self.size())
            .map(|v| self.children(v).map(|(_, c)| c as u32).collect())
            .collect();
        BracketTree::from_preorder_lists(self.arity, kids)
    }

    pub(crate) fn legal_with(&self, v: usize, parents: &[Option<(usize, usize)>]) -> bool {
        let Some((u, i)) = parents[v] else {
            return false;
        };
        let chi_v = self.chi_of(v);
        let (Some(&lo), Some(&hi)) = (chi_v.first(), chi_v.last()) else {
            return true;
        };
        self.children(u).all(|(j, _)| j == i || j < lo || j > hi)
    }

    /// Child ids whose parent edge is legally contractible.
    pub(crate) fn legal_children(&self) -> Vec<usize> {
        let parents = self.parents();
        (1..self.size())
            .filter(|&v| self.legal_with(v, &parents))
            .collect()
    }

    /// Legally contractible edges as `(lower endpoint, edge type)`.
    pub fn legal_edges(&self) -> Vec<(VertexRef, usize)> {
        let parents = self.parents();
        self.legal_children()
            .into_iter()
            .map(|v| (self.vertex_ref(v), parents[v].map(|(_, s)| s).unwrap()))
            .collect()
    }

    pub(crate) fn contract_child(&self, v: usize, parents: &[Option<(usize, usize)>]) -> DaryTree {
        let (u, i) = parents[v].expect("root has no parent edge");
        let d = self.arity;
        let mut arena = self.slots.clone();
        arena[u * d + i - 1] = NIL;
        for (s, c) in self.children(v) {
            arena[u * d + s - 1] = c as u32;
        }
        DaryTree::from_arena(d, &arena)
    }

    /// Contracts the edge above `child`, which must be legal.
    pub fn contract(&self, child: &VertexRef) -> Result<DaryTree> {
        let v = self.resolve(child)?;
        let parents = self.parents();
        if !self.legal_with(v, &parents) {
            return Err(Error::IllegalContraction(child.to_string()));
        }
        Ok(self.contract_child(v, &parents))
    }

    pub fn encode(&self) -> String {
        fn node(t: &DaryTree, v: usize, out: &mut String) {
            out.push('(');
            for &c in t.row(v) {
                if c == NIL {
                    out.push('_');
                } else {
                    node(t, c as usize, out);
                }
            }
            out.push(')');
        }
        let mut out = format!("d{}:", self.arity);
        node(self, 0, &mut out);
        out
    }
}
