use std::fmt;

use super::{VertexRef, NIL};
use crate::{Error, Result};

/// A nonempty `[d]`-tree: ordered children, at most `bound` per vertex.
///
/// Child lists are stored in preorder with node 0 as the root, so equality is
/// plane-tree isomorphism.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BracketTree {
    bound: usize,
    kids: Vec<Vec<u32>>,
}

impl fmt::Debug for BracketTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BracketTree({})", self.encode())
    }
}

impl BracketTree {
    pub fn single(bound: usize) -> Self {
        assert!(bound >= 2, "bound must be at least 2");
        BracketTree {
            bound,
            kids: vec![Vec::new()],
        }
    }

    /// Caller guarantees preorder numbering and the child bound.
    pub(crate) fn from_preorder_lists(bound: usize, kids: Vec<Vec<u32>>) -> Self {
        debug_assert!(kids.iter().all(|k| k.len() <= bound));
        BracketTree { bound, kids }
    }

    pub(crate) fn from_arena(bound: usize, arena: &[Vec<u32>]) -> Self {
        let mut order = Vec::with_capacity(arena.len());
        let mut remap = vec![NIL; arena.len()];
        let mut stack = vec![0u32];
        while let Some(v) = stack.pop() {
            remap[v as usize] = order.len() as u32;
            order.push(v);
            stack.extend(arena[v as usize].iter().rev());
        }
        let kids = order
            .iter()
            .map(|&v| {
                arena[v as usize]
                    .iter()
                    .map(|&c| remap[c as usize])
                    .collect()
            })
            .collect();
        BracketTree { bound, kids }
    }

    /// A root with the given subtrees, left to right.
    pub fn join(bound: usize, subs: &[&BracketTree]) -> Result<Self> {
        if subs.len() > bound {
            return Err(Error::InvalidArgument(format!(
                "{} children exceed the bound {bound}",
                subs.len()
            )));
        }
        let mut root = Vec::with_capacity(subs.len());
        let mut kids = vec![Vec::new()];
        let mut offset = 1u32;
        for t in subs {
            if t.bound != bound {
                return Err(Error::ArityMismatch(bound, t.bound));
            }
            root.push(offset);
            kids.extend(
                t.kids
                    .iter()
                    .map(|k| k.iter().map(|&c| c + offset).collect::<Vec<_>>()),
            );
            offset += t.size() as u32;
        }
        kids[0] = root;
        Ok(BracketTree { bound, kids })
    }

    /// The path on `n >= 1` vertices.
    pub fn path(bound: usize, n: usize) -> Self {
        assert!(n >= 1);
        let mut t = BracketTree::single(bound);
        for _ in 1..n {
            t = BracketTree::join(bound, &[&t]).expect("one child fits any bound");
        }
        t
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn size(&self) -> usize {
        self.kids.len()
    }

    /// Children of `v`, left to right.
    pub fn children(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.kids[v].iter().map(|&c| c as usize)
    }

    pub fn num_children(&self, v: usize) -> usize {
        self.kids[v].len()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.kids[v].is_empty()
    }

    /// `(parent, 1-based position)` for every vertex; `None` at the root.
    pub fn parents(&self) -> Vec<Option<(usize, usize)>> {
        let mut parents = vec![None; self.size()];
        for (v, ks) in self.kids.iter().enumerate() {
            for (i, &c) in ks.iter().enumerate() {
                parents[c as usize] = Some((v, i + 1));
            }
        }
        parents
    }

    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.size()];
        for v in 0..self.size() {
            for c in self.children(v) {
                depth[c] = depth[v] + 1;
            }
        }
        depth
    }

    pub fn height(&self) -> usize {
        self.depths().into_iter().max().unwrap_or(0)
    }

    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut sz = vec![1; self.size()];
        for v in (0..self.size()).rev() {
            for c in self.children(v) {
                sz[v] += sz[c];
            }
        }
        sz
    }

    pub fn resolve(&self, at: &VertexRef) -> Result<usize> {
        let mut v = 0;
        for &i in at.path() {
            v = match i.checked_sub(1).and_then(|i| self.kids[v].get(i)) {
                Some(&c) => c as usize,
                None => return Err(Error::UnresolvedVertex(at.to_string())),
            };
        }
        Ok(v)
    }

    pub fn vertex_ref(&self, v: usize) -> VertexRef {
        let parents = self.parents();
        let mut path = Vec::new();
        let mut cur = v;
        while let Some((p, i)) = parents[cur] {
            path.push(i);
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

    pub(crate) fn subtree_at(&self, v: usize) -> BracketTree {
        let n = self.subtree_sizes()[v];
        let base = v as u32;
        let kids = self.kids[v..v + n]
            .iter()
            .map(|k| k.iter().map(|&c| c - base).collect())
            .collect();
        BracketTree {
            bound: self.bound,
            kids,
        }
    }

    pub fn subtree(&self, at: &VertexRef) -> Result<BracketTree> {
        Ok(self.subtree_at(self.resolve(at)?))
    }

    /// Glues `sub` to the leaf `at`.
    pub fn glue(&self, at: &VertexRef, sub: &BracketTree) -> Result<BracketTree> {
        if sub.bound != self.bound {
            return Err(Error::ArityMismatch(self.bound, sub.bound));
        }
        let v = self.resolve(at)?;
        if !self.is_leaf(v) {
            return Err(Error::NotALeaf(at.to_string()));
        }
        let offset = self.size() as u32;
        let mut arena = self.kids.clone();
        arena.extend(
            sub.kids
                .iter()
                .map(|k| k.iter().map(|&c| c + offset).collect::<Vec<_>>()),
        );
        arena[v] = arena[offset as usize].clone();
        Ok(BracketTree::from_arena(self.bound, &arena))
    }

    pub(crate) fn legal_with(&self, v: usize, parents: &[Option<(usize, usize)>]) -> bool {
        match parents[v] {
            Some((u, _)) => self.num_children(u) - 1 + self.num_children(v) <= self.bound,
            None => false,
        }
    }

    pub(crate) fn legal_children(&self) -> Vec<usize> {
        let parents = self.parents();
        (1..self.size())
            .filter(|&v| self.legal_with(v, &parents))
            .collect()
    }

    /// Legally contractible edges, named by their lower endpoint.
    pub fn legal_edges(&self) -> Vec<VertexRef> {
        self.legal_children()
            .into_iter()
            .map(|v| self.vertex_ref(v))
            .collect()
    }

    pub(crate) fn contract_child(
        &self,
        v: usize,
        parents: &[Option<(usize, usize)>],
    ) -> BracketTree {
        let (u, pos) = parents[v].expect("root has no parent edge");
        let mut arena = self.kids.clone();
        let moved = std::mem::take(&mut arena[v]);
        arena[u].splice(pos - 1..pos, moved);
        BracketTree::from_arena(self.bound, &arena)
    }

    /// Contracts the edge above `child`; v's children take its place in order.
    pub fn contract(&self, child: &VertexRef) -> Result<BracketTree> {
        let v = self.resolve(child)?;
        let parents = self.parents();
        if !self.legal_with(v, &parents) {
            return Err(Error::IllegalContraction(child.to_string()));
        }
        Ok(self.contract_child(v, &parents))
    }

    pub fn encode(&self) -> String {
        fn node(t: &BracketTree, v: usize, out: &mut String) {
            out.push('(');
            for c in t.children(v) {
                node(t, c, out);
            }
            out.push(')');
        }
        let mut out = format!("b{}:", self.bound);
        node(self, 0, &mut out);
        out
    }
}
