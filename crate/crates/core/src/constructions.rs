//! The universal tree families and the gadgets they are assembled from.
//!
//! Every family has a size function evaluated independently of the builder
//! ([`formula_size`]); [`build`] constructs the tree and fails with
//! [`Error::SizeMismatch`] when the two disagree.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::tree::{BracketTree, DaryTree, Kind, Tree, VertexRef};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyId {
    Delta,
    Xi,
    Lambda,
    BigXi,
    Crescent,
    Vertebra,
    Spine,
    ModifiedVertebra,
    ModifiedSpine,
    Perfect,
    JGadget,
}

impl FamilyId {
    pub const ALL: [FamilyId; 11] = [
        FamilyId::Delta,
        FamilyId::Xi,
        FamilyId::Lambda,
        FamilyId::BigXi,
        FamilyId::Crescent,
        FamilyId::Vertebra,
        FamilyId::Spine,
        FamilyId::ModifiedVertebra,
        FamilyId::ModifiedSpine,
        FamilyId::Perfect,
        FamilyId::JGadget,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::Delta => "delta",
            FamilyId::Xi => "xi",
            FamilyId::Lambda => "lambda",
            FamilyId::BigXi => "big_xi",
            FamilyId::Crescent => "crescent",
            FamilyId::Vertebra => "vertebra",
            FamilyId::Spine => "spine",
            FamilyId::ModifiedVertebra => "modified_vertebra",
            FamilyId::ModifiedSpine => "modified_spine",
            FamilyId::Perfect => "perfect",
            FamilyId::JGadget => "j_gadget",
        }
    }

    pub fn kind(self) -> Kind {
        match self {
            FamilyId::Lambda
            | FamilyId::BigXi
            | FamilyId::ModifiedVertebra
            | FamilyId::ModifiedSpine => Kind::Bracket,
            _ => Kind::Dary,
        }
    }

    /// The universal family for a kind and containment mode.
    pub fn universal_for(kind: Kind, mode: crate::containment::Mode) -> FamilyId {
        use crate::containment::Mode;
        match (kind, mode) {
            (Kind::Dary, Mode::Contiguous) => FamilyId::Delta,
            (Kind::Dary, Mode::Noncontiguous) => FamilyId::Xi,
            (Kind::Bracket, Mode::Contiguous) => FamilyId::Lambda,
            (Kind::Bracket, Mode::Noncontiguous) => FamilyId::BigXi,
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace('-', "_").to_ascii_lowercase();
        FamilyId::ALL
            .into_iter()
            .find(|f| f.name() == norm)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family {s:?}")))
    }
}

fn check_d(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!(
            "d must be at least 2, got {d}"
        )));
    }
    Ok(())
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    Ok(())
}

fn overflow(what: &str, d: usize, k: usize) -> Error {
    Error::InvalidArgument(format!("{what}({d}, {k}) overflows 128 bits"))
}

/// The tree contiguously containing every d-ary tree on `k` vertices.
pub fn delta(d: usize, k: usize) -> Result<DaryTree> {
    check_d(d)?;
    check_k(k)?;
    if k == 1 {
        return Ok(DaryTree::single(d));
    }
    let spine = DaryTree::path(d, &vec![1; k - 2])?;
    let v = VertexRef::new(vec![1; k - 2]);
    let p = DaryTree::perfect(d, k - 2);
    let mut subs = vec![Some(&p); d];
    subs[0] = None;
    let fan = DaryTree::join(d, &subs);
    let t = spine.glue(&v, &fan)?;
    // leftmost leaf of the copy in slot 2
    let mut low = v.child(2);
    for _ in 0..k - 2 {
        low = low.child(1);
    }
    t.glue(&low, &DaryTree::path(d, &[1])?)
}

/// The path on `d + 1` vertices whose edge at depth `i` has type `i`.
pub fn crescent(d: usize) -> Result<DaryTree> {
    check_d(d)?;
    DaryTree::path(d, &(1..=d).collect::<Vec<_>>())
}

/// Attachment points of one vertebra, as paths from the root of the host tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertebraRefs {
    pub top: VertexRef,
    pub left: VertexRef,
    pub center: VertexRef,
    pub right: VertexRef,
}

impl VertebraRefs {
    fn shifted(&self, base: &VertexRef) -> VertebraRefs {
        VertebraRefs {
            top: base.join(&self.top),
            left: base.join(&self.left),
            center: base.join(&self.center),
            right: base.join(&self.right),
        }
    }
}

/// Three crescents merged into a tree on `3d - 1` vertices with three leaves.
pub fn vertebra(d: usize) -> Result<(DaryTree, VertebraRefs)> {
    let mid = crescent(d)?;
    let upper = DaryTree::path(d, &(1..d).collect::<Vec<_>>())?;
    let lower = DaryTree::path(d, &(2..=d).collect::<Vec<_>>())?;
    let t = mid
        .attach_merge(&VertexRef::new(vec![1]), &upper)?
        .attach_merge(&VertexRef::root(), &lower)?;
    let mut left = vec![1];
    left.extend(1..d);
    let refs = VertebraRefs {
        top: VertexRef::root(),
        left: VertexRef::new(left),
        center: VertexRef::new((1..=d).collect()),
        right: VertexRef::new((2..=d).collect()),
    };
    Ok((t, refs))
}

/// A crescent with `m` vertebrae chained below it, highest first.
pub fn spine(d: usize, m: usize) -> Result<(DaryTree, Vec<VertebraRefs>)> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "a spine needs at least one vertebra".into(),
        ));
    }
    let (v, local) = vertebra(d)?;
    let mut t = crescent(d)?;
    let mut at = VertexRef::new((1..=d).collect());
    let mut refs = Vec::with_capacity(m);
    for _ in 0..m {
        t = t.glue(&at, &v)?;
        let r = local.shifted(&at);
        at = r.center.clone();
        refs.push(r);
    }
    Ok((t, refs))
}

/// Glues the recursive parts onto a spine. With `short` the spine has
/// `⌊k/2⌋ - 1` vertebrae and the last one receives the tail; otherwise it has
/// `⌊k/2⌋` and the last one also receives two copies of part `⌊(k+1)/4⌋`.
fn assemble(
    spine: Tree,
    vs: &[VertebraRefs],
    k: usize,
    short: bool,
    part: &mut dyn FnMut(usize) -> Result<Tree>,
) -> Result<Tree> {
    let (h, c) = (k / 2, k.div_ceil(2));
    debug_assert_eq!(vs.len(), if short { h - 1 } else { h });
    let mut t = spine;
    for (i, v) in vs.iter().enumerate().take(h - 2) {
        let s = part(i + 1)?;
        t = t.glue(&v.left, &s)?.glue(&v.right, &s)?;
    }
    let v = &vs[h - 2];
    t = t.glue(&v.right, &part(h - 1)?)?;
    t = t.glue(&v.left, &part(c - 1)?)?;
    let bottom = vs.last().expect("spine is nonempty");
    t = t.glue(&bottom.center, &part(c)?)?;
    if !short {
        let s = part((k + 1) / 4)?;
        t = t.glue(&bottom.left, &s)?.glue(&bottom.right, &s)?;
    }
    Ok(t)
}

fn xi_memo(d: usize, k: usize, memo: &mut HashMap<usize, DaryTree>) -> Result<DaryTree> {
    if let Some(t) = memo.get(&k) {
        return Ok(t.clone());
    }
    let t = match k {
        1 => DaryTree::single(d),
        2 => crescent(d)?,
        3 => {
            let fan = DaryTree::perfect(d, 1);
            crescent(d)?.glue(&VertexRef::new((1..=d).collect()), &fan)?
        }
        _ => {
            let short = d == 2;
            let m = if short { k / 2 - 1 } else { k / 2 };
            let (s, vs) = spine(d, m)?;
            let mut part = |i: usize| xi_memo(d, i, memo).map(Tree::Dary);
            match assemble(Tree::Dary(s), &vs, k, short, &mut part)? {
                Tree::Dary(t) => t,
                Tree::Bracket(_) => unreachable!("d-ary parts glue to a d-ary tree"),
            }
        }
    };
    memo.insert(k, t.clone());
    Ok(t)
}

/// The tree noncontiguously containing every d-ary tree on `k` vertices.
pub fn xi(d: usize, k: usize) -> Result<DaryTree> {
    check_d(d)?;
    check_k(k)?;
    xi_memo(d, k, &mut HashMap::new())
}

/// Where the tail (the copy of the `⌈k/2⌉` member) hangs in `xi(d, k)` or
/// `big_xi(d, k)`; `None` for `k < 4`.
pub fn tail_ref(kind: Kind, d: usize, k: usize) -> Result<Option<VertexRef>> {
    check_d(d)?;
    if k < 4 {
        return Ok(None);
    }
    let vs = match kind {
        Kind::Dary => spine(d, if d == 2 { k / 2 - 1 } else { k / 2 })?.1,
        Kind::Bracket => modified_spine(d, k / 2 - usize::from(d == 2))?.1,
    };
    Ok(vs.last().map(|v| v.center.clone()))
}

fn kron(d: usize) -> u128 {
    u128::from(d == 2)
}

/// Size of `xi(d, k)` by its recurrence.
pub fn m_size(d: usize, k: usize) -> Result<u128> {
    check_d(d)?;
    check_k(k)?;
    let dd = d as u128;
    let mut m = vec![0u128, 1, dd + 1, 2 * dd + 1];
    for n in 4..=k {
        let (h, c) = (n / 2, n.div_ceil(2));
        let delta = kron(d);
        let mut acc = (dd + 1).checked_add(
            (h as u128 - delta)
                .checked_mul(3 * dd - 2)
                .ok_or(overflow("M", d, k))?,
        );
        let mut add = |x: u128| acc = acc.and_then(|a| a.checked_add(x));
        for x in &m[1..h - 1] {
            add(2 * (x - 1));
        }
        add(m[h - 1] - 1);
        add(m[c - 1] - 1);
        add(m[c] - 1);
        add(2 * (1 - delta) * (m[(n + 1) / 4] - 1));
        m.push(acc.ok_or(overflow("M", d, k))?);
    }
    Ok(m[k])
}

/// `J_t`: a type-1 path on `m - 1` vertices with leaves of types
/// `t_1, ..., t_m` from left to right; `t_1` and `t_2` hang at the bottom vertex
/// and `t_i` at the `(i-1)`-th vertex from the bottom.
pub fn j_gadget(d: usize, tvec: &[usize]) -> Result<DaryTree> {
    check_d(d)?;
    let ok = !tvec.is_empty()
        && tvec.windows(2).all(|w| w[0] < w[1])
        && tvec[0] >= 1
        && tvec[tvec.len() - 1] <= d;
    if !ok {
        return Err(Error::BadTypeVector(d));
    }
    let leaf = DaryTree::single(d);
    let mut subs = vec![None; d];
    subs[tvec[0] - 1] = Some(&leaf);
    if let Some(&t2) = tvec.get(1) {
        subs[t2 - 1] = Some(&leaf);
    }
    let mut t = DaryTree::join(d, &subs);
    for &ti in tvec.iter().skip(2) {
        let mut subs = vec![None; d];
        subs[0] = Some(&t);
        subs[ti - 1] = Some(&leaf);
        t = DaryTree::join(d, &subs);
    }
    Ok(t)
}

fn lambda_memo(d: usize, k: usize, memo: &mut Vec<BracketTree>) -> Result<BracketTree> {
    while memo.len() < k {
        let n = memo.len() + 1;
        let child_sizes: Vec<usize> = if n == 1 {
            Vec::new()
        } else if n <= d {
            let mut v: Vec<usize> = (1..n / 2).collect();
            v.push(n - 1);
            v.extend((1..n.div_ceil(2)).rev());
            v
        } else {
            let mut v: Vec<usize> = (n - d..=n - d / 2 - 2).collect();
            v.push(n - 1);
            v.extend((n - d..=n - d.div_ceil(2) - 1).rev());
            v
        };
        let subs: Vec<&BracketTree> = child_sizes.iter().map(|&i| &memo[i - 1]).collect();
        let t = BracketTree::join(d, &subs)?;
        memo.push(t);
    }
    Ok(memo[k - 1].clone())
}

/// The `[d]`-tree contiguously containing every `[d]`-tree on `k` vertices,
/// with each embedding rooted at its root.
pub fn lambda(d: usize, k: usize) -> Result<BracketTree> {
    check_d(d)?;
    check_k(k)?;
    lambda_memo(d, k, &mut Vec::new())
}

/// Size of `lambda(d, k)` by its recurrence.
pub fn l_size(d: usize, k: usize) -> Result<u128> {
    check_d(d)?;
    check_k(k)?;
    let mut l = vec![0u128, 1];
    for n in 2..=k {
        let (a, b) = if n <= d {
            (1..n / 2, 1..n.div_ceil(2))
        } else {
            (n - d..n - d / 2 - 1, n - d..n - d.div_ceil(2))
        };
        let v = a
            .chain(b)
            .try_fold(1 + l[n - 1], |acc, i| acc.checked_add(l[i]))
            .ok_or(overflow("L", d, k))?;
        l.push(v);
    }
    Ok(l[k])
}

/// The small bracket analogue of the vertebra. For `d > 2` a root with three
/// leaf children; for `d = 2` the root's left child holds the left and center
/// leaves and the right leaf is the root's right child.
pub fn modified_vertebra(d: usize) -> Result<(BracketTree, VertebraRefs)> {
    check_d(d)?;
    let leaf = BracketTree::single(d);
    let r = |p: &[usize]| VertexRef::new(p.to_vec());
    if d == 2 {
        let cherry = BracketTree::join(2, &[&leaf, &leaf])?;
        let t = BracketTree::join(2, &[&cherry, &leaf])?;
        Ok((
            t,
            VertebraRefs {
                top: VertexRef::root(),
                left: r(&[1, 1]),
                center: r(&[1, 2]),
                right: r(&[2]),
            },
        ))
    } else {
        let t = BracketTree::join(d, &[&leaf, &leaf, &leaf])?;
        Ok((
            t,
            VertebraRefs {
                top: VertexRef::root(),
                left: r(&[1]),
                center: r(&[2]),
                right: r(&[3]),
            },
        ))
    }
}

/// A 2-vertex path with `m` modified vertebrae chained below it.
pub fn modified_spine(d: usize, m: usize) -> Result<(BracketTree, Vec<VertebraRefs>)> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "a spine needs at least one vertebra".into(),
        ));
    }
    let (v, local) = modified_vertebra(d)?;
    let mut t = BracketTree::path(d, 2);
    let mut at = VertexRef::new(vec![1]);
    let mut refs = Vec::with_capacity(m);
    for _ in 0..m {
        t = t.glue(&at, &v)?;
        let r = local.shifted(&at);
        at = r.center.clone();
        refs.push(r);
    }
    Ok((t, refs))
}

fn big_xi_memo(d: usize, k: usize, memo: &mut HashMap<usize, BracketTree>) -> Result<BracketTree> {
    if let Some(t) = memo.get(&k) {
        return Ok(t.clone());
    }
    let leaf = BracketTree::single(d);
    let t = match k {
        1 => leaf,
        2 => BracketTree::path(d, 2),
        3 => {
            let cherry = BracketTree::join(d, &[&leaf, &leaf])?;
            BracketTree::join(d, &[&cherry])?
        }
        _ => {
            let short = d == 2;
            let m = if short { k / 2 - 1 } else { k / 2 };
            let (s, vs) = modified_spine(d, m)?;
            let mut part = |i: usize| big_xi_memo(d, i, memo).map(Tree::Bracket);
            match assemble(Tree::Bracket(s), &vs, k, short, &mut part)? {
                Tree::Bracket(t) => t,
                Tree::Dary(_) => unreachable!("bracket parts glue to a bracket tree"),
            }
        }
    };
    memo.insert(k, t.clone());
    Ok(t)
}

/// The `[d]`-tree noncontiguously containing every `[d]`-tree on `k` vertices.
pub fn big_xi(d: usize, k: usize) -> Result<BracketTree> {
    check_d(d)?;
    check_k(k)?;
    big_xi_memo(d, k, &mut HashMap::new())
}

/// Size of `big_xi(d, k)` by its recurrence.
pub fn mp_size(d: usize, k: usize) -> Result<u128> {
    check_d(d)?;
    check_k(k)?;
    let mut m = vec![0u128, 1, 2, 4];
    for n in 4..=k {
        let (h, c) = (n / 2, n.div_ceil(2));
        let delta = kron(d);
        let mut acc = Some(2 + (3 + delta) * (h as u128 - delta));
        let mut add = |x: u128| acc = acc.and_then(|a| a.checked_add(x));
        for x in &m[1..h - 1] {
            add(2 * (x - 1));
        }
        add(m[h - 1] - 1);
        add(m[c - 1] - 1);
        add(m[c] - 1);
        add(2 * (1 - delta) * (m[(n + 1) / 4] - 1));
        m.push(acc.ok_or(overflow("M'", d, k))?);
    }
    Ok(m[k])
}

/// Vertex count of a family member, computed without building it.
///
/// `k` is the pattern size for the four universal families, the number of
/// vertebrae for spines, the height for perfect trees and the number of leaves
/// for `j_gadget` (with types `1..=k`); it is ignored by the fixed gadgets.
pub fn formula_size(family: FamilyId, d: usize, k: usize) -> Result<u128> {
    check_d(d)?;
    let dd = d as u128;
    let kk = k as u128;
    let of = || overflow(family.name(), d, k);
    Ok(match family {
        FamilyId::Delta => {
            check_k(k)?;
            dd.checked_pow(k as u32 - 1)
                .and_then(|p| p.checked_add(kk - 1))
                .ok_or_else(of)?
        }
        FamilyId::Xi => m_size(d, k)?,
        FamilyId::Lambda => l_size(d, k)?,
        FamilyId::BigXi => mp_size(d, k)?,
        FamilyId::Crescent => dd + 1,
        FamilyId::Vertebra => 3 * dd - 1,
        FamilyId::Spine => (dd + 1) + kk * (3 * dd - 2),
        FamilyId::ModifiedVertebra => 4 + kron(d),
        FamilyId::ModifiedSpine => 2 + kk * (3 + kron(d)),
        FamilyId::Perfect => (0..=k as u32)
            .try_fold(0u128, |acc, r| {
                dd.checked_pow(r).and_then(|p| acc.checked_add(p))
            })
            .ok_or_else(of)?,
        FamilyId::JGadget => {
            if k == 1 {
                2
            } else {
                2 * kk - 1
            }
        }
    })
}

/// Builds a family member (see [`formula_size`] for the meaning of `k`) and
/// checks its size against the formula.
pub fn build(family: FamilyId, d: usize, k: usize) -> Result<Tree> {
    check_d(d)?;
    let t: Tree = match family {
        FamilyId::Delta => delta(d, k)?.into(),
        FamilyId::Xi => xi(d, k)?.into(),
        FamilyId::Lambda => lambda(d, k)?.into(),
        FamilyId::BigXi => big_xi(d, k)?.into(),
        FamilyId::Crescent => crescent(d)?.into(),
        FamilyId::Vertebra => vertebra(d)?.0.into(),
        FamilyId::Spine => spine(d, k)?.0.into(),
        FamilyId::ModifiedVertebra => modified_vertebra(d)?.0.into(),
        FamilyId::ModifiedSpine => modified_spine(d, k)?.0.into(),
        FamilyId::Perfect => DaryTree::perfect(d, k).into(),
        FamilyId::JGadget => {
            check_k(k)?;
            j_gadget(d, &(1..=k).collect::<Vec<_>>())?.into()
        }
    };
    let expect = formula_size(family, d, k)?;
    if expect != t.size() as u128 {
        return Err(Error::SizeMismatch {
            family: family.to_string(),
            d,
            k,
            recurrence: expect,
            constructed: t.size(),
        });
    }
    Ok(t)
}
