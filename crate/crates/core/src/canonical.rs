//! Canonical forms of small covers, for isomorphism tests.
//!
//! Two covers are isomorphic when a bijection of vertices (respecting the
//! parts, possibly swapping them) maps one member family onto the other. The
//! form is the lexicographically least list of sorted per-part incidence
//! masks over all member relabelings, which is exact but costs `m!` work, so
//! it is limited to [`MAX_MEMBERS`] members.

use crate::cover::{CoverFamily, HostGraph};
use crate::error::{Error, Result};

pub const MAX_MEMBERS: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    bipartite: bool,
    parts: Vec<Vec<u32>>,
}

/// Heap's algorithm, calling `visit` on every permutation of `0..n`.
fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    visit(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            visit(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

pub fn canonical_form(c: &CoverFamily) -> Result<CanonicalForm> {
    let m = c.len();
    if m > MAX_MEMBERS {
        return Err(Error::Domain(format!(
            "canonical form limited to {MAX_MEMBERS} members, got {m}"
        )));
    }
    let stars: Vec<Vec<usize>> = c.stars().iter().map(|s| s.ones().collect()).collect();
    let (p1, p2): (Vec<usize>, Vec<usize>) = match c.host() {
        HostGraph::Complete { order } => ((0..order).collect(), Vec::new()),
        HostGraph::CompleteBipartite { left, right } => {
            ((0..left).collect(), (left..left + right).collect())
        }
    };
    let bipartite = c.host().is_bipartite();
    let mut best: Option<Vec<Vec<u32>>> = None;
    for_each_permutation(m, |perm| {
        let masks = |part: &[usize]| -> Vec<u32> {
            let mut v: Vec<u32> = part
                .iter()
                .map(|&x| stars[x].iter().fold(0u32, |acc, &j| acc | (1 << perm[j])))
                .collect();
            v.sort_unstable();
            v
        };
        let a = masks(&p1);
        // an unordered pair of parts, so swapping the sides gives the same form
        let cand = if bipartite {
            let b = masks(&p2);
            if b < a {
                vec![b, a]
            } else {
                vec![a, b]
            }
        } else {
            vec![a]
        };
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    });
    Ok(CanonicalForm {
        bipartite,
        parts: best.unwrap_or_default(),
    })
}

pub fn is_isomorphic(a: &CoverFamily, b: &CoverFamily) -> Result<bool> {
    if a.len() != b.len()
        || a.host().order() != b.host().order()
        || a.host().is_bipartite() != b.host().is_bipartite()
    {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}
