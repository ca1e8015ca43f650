//! Explicit constructions and the reductions between the three extremal
//! problems.
//!
//! Fresh vertices get deterministic names: doubling appends `0`/`1` to every
//! label, padding vertices are `pad0, pad1, ...`, and the bipartite
//! projection of a critical hypergraph tags vertices as `1:x` / `2:y`.

use std::collections::BTreeSet;

use crate::cover::{self, CoverFamily, HostGraph};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Permutation};
use crate::invertibility;
use crate::set::VertexSet;

/// A family of sets over string elements.
pub type SetFamily = Vec<BTreeSet<String>>;

fn require_minimal(c: &CoverFamily, what: &str) -> Result<()> {
    if cover::is_minimal_edge_cover(c) {
        Ok(())
    } else {
        Err(Error::Contract(format!(
            "{what} needs a minimal edge cover"
        )))
    }
}

fn bipartite_parts(c: &CoverFamily) -> Result<(usize, usize)> {
    match c.host() {
        HostGraph::CompleteBipartite { left, right } => Ok((left, right)),
        HostGraph::Complete { .. } => {
            Err(Error::Domain("expected a complete bipartite host".into()))
        }
    }
}

/// The recursive extremal cover of `K_{2^(d−1), 2^(d−1)}`: one member
/// `{u, v}` at `d = 1`, then `d − 1` doublings. It has `3·2^(d−1) − 2`
/// members and degree `d` on both sides.
pub fn lower_bound_cover(d: u32) -> Result<CoverFamily> {
    if d == 0 {
        return Err(Error::Domain("lower_bound_cover needs d >= 1".into()));
    }
    let mut c = CoverFamily::bipartite(&["u"], &["v"], &[&["u", "v"]])?;
    for _ in 1..d {
        c = double_cover(&c)?;
    }
    Ok(c)
}

/// Two disjoint copies of a minimal cover of `K_{p,q}` plus the two crossing
/// members `P1⁰ ∪ P2¹` and `P1¹ ∪ P2⁰`. Copy `i` appends `i` to every label.
///
/// The result is a minimal cover of `K_{2p,2q}` with `2m + 2` members; every
/// vertex lies in exactly one crossing member, so every degree grows by one.
pub fn double_cover(c: &CoverFamily) -> Result<CoverFamily> {
    let (left, right) = bipartite_parts(c)?;
    require_minimal(c, "double_cover")?;
    let labels = c.labels();
    let mut out_labels = Vec::with_capacity(2 * labels.len());
    for bit in ["0", "1"] {
        out_labels.extend(labels[..left].iter().map(|l| format!("{l}{bit}")));
    }
    for bit in ["0", "1"] {
        out_labels.extend(labels[left..].iter().map(|l| format!("{l}{bit}")));
    }
    let relabel = |x: usize, copy: usize| -> usize {
        if x < left {
            copy * left + x
        } else {
            2 * left + copy * right + (x - left)
        }
    };
    let mut members = Vec::with_capacity(2 * c.len() + 2);
    for copy in 0..2 {
        members.extend(c.members().iter().map(|m| m.map(|x| relabel(x, copy))));
    }
    let p1 = |copy: usize| (0..left).map(move |x| relabel(x, copy));
    let p2 = |copy: usize| (left..left + right).map(move |x| relabel(x, copy));
    members.push(p1(0).chain(p2(1)).collect());
    members.push(p1(1).chain(p2(0)).collect());
    CoverFamily::new(
        out_labels,
        HostGraph::CompleteBipartite {
            left: 2 * left,
            right: 2 * right,
        },
        members,
    )
}

fn fresh_labels(existing: &[String], prefix: &str, count: usize) -> Vec<String> {
    let taken: BTreeSet<&str> = existing.iter().map(String::as_str).collect();
    let mut prefix = prefix.to_string();
    loop {
        let fresh: Vec<String> = (0..count).map(|i| format!("{prefix}{i}")).collect();
        if fresh.iter().all(|l| !taken.contains(l.as_str())) {
            return fresh;
        }
        prefix.insert(0, '_');
    }
}

/// Pads a minimal cover of the complete graph on `V` with `|V| − 1` isolated
/// vertices. The resulting hypergraph is invertibility critical with the
/// same maximum degree.
pub fn cover_to_critical(c: &CoverFamily) -> Result<Hypergraph> {
    let HostGraph::Complete { order } = c.host() else {
        return Err(Error::Domain(
            "cover_to_critical needs a complete host".into(),
        ));
    };
    require_minimal(c, "cover_to_critical")?;
    let mut labels = c.labels().to_vec();
    labels.extend(fresh_labels(c.labels(), "pad", order - 1));
    Hypergraph::new(labels, c.members().iter().cloned())
}

/// For the padded hypergraph of [`cover_to_critical`], an explicit inverting
/// permutation of the hypergraph with member `index` removed.
///
/// With `{x, y}` privately covered by that member: `V ∖ {x}` goes onto the
/// pads in order, `x ↦ y`, and the pads go onto `V ∖ {y}` in order. Only the
/// removed member contains both `x` and `y`, so every remaining edge is moved
/// off itself.
pub fn padded_inverting_permutation(c: &CoverFamily, index: usize) -> Result<Permutation> {
    let HostGraph::Complete { order } = c.host() else {
        return Err(Error::Domain("needs a complete host".into()));
    };
    let member = c
        .members()
        .get(index)
        .ok_or_else(|| Error::Domain(format!("no member with index {index}")))?;
    let stars = c.stars();
    let (x, y) = member
        .iter()
        .flat_map(|x| member.iter().filter(move |&y| y > x).map(move |y| (x, y)))
        .find(|&(x, y)| stars[x].intersection(&stars[y]).nth(1).is_none())
        .ok_or_else(|| Error::Contract("member covers no private pair".into()))?;
    let mut image = vec![0; 2 * order - 1];
    let pads = order..2 * order - 1;
    for (v, pad) in (0..order).filter(|&v| v != x).zip(pads.clone()) {
        image[v] = pad;
    }
    image[x] = y;
    for (pad, v) in pads.zip((0..order).filter(|&v| v != y)) {
        image[pad] = v;
    }
    Permutation::new(image)
}

/// Projects an invertibility-critical hypergraph onto a minimal edge cover of
/// the complete bipartite graph between `ι1(U)` and `ι2(W)`, where `U` is the
/// canonical Hall violator of `G(H)` and `W = V ∖ N(ι1(U))`.
///
/// Every pair in `U × W` shares an edge, and criticality forces each edge to
/// contain such a pair privately; one member per edge, degree never grows.
pub fn critical_to_bipartite_cover(h: &Hypergraph) -> Result<CoverFamily> {
    if !invertibility::is_invertibility_critical(h) {
        return Err(Error::Contract(
            "critical_to_bipartite_cover needs an invertibility-critical hypergraph".into(),
        ));
    }
    let def =
        invertibility::find_deficiency_set(h).expect("critical hypergraphs are not invertible");
    let u = def.set;
    let w = VertexSet::range(h.vertex_count()).difference(&def.neighborhood);
    let mut labels: Vec<String> = u.iter().map(|x| format!("1:{}", h.label(x))).collect();
    labels.extend(w.iter().map(|y| format!("2:{}", h.label(y))));
    let pos_u = |x| u.as_slice().binary_search(&x).unwrap();
    let pos_w = |y| u.len() + w.as_slice().binary_search(&y).unwrap();
    let members: Vec<VertexSet> = h
        .edges()
        .iter()
        .map(|e| {
            e.iter()
                .filter(|&x| u.contains(x))
                .map(pos_u)
                .chain(e.iter().filter(|&y| w.contains(y)).map(pos_w))
                .collect()
        })
        .collect();
    if members.iter().any(VertexSet::is_empty) {
        return Err(Error::Contract("an edge misses both U and W".into()));
    }
    let distinct: BTreeSet<&VertexSet> = members.iter().collect();
    if distinct.len() != members.len() {
        return Err(Error::Contract(
            "two edges project onto the same member".into(),
        ));
    }
    let out = CoverFamily::new(
        labels,
        HostGraph::CompleteBipartite {
            left: u.len(),
            right: w.len(),
        },
        members,
    )?;
    debug_assert!(cover::is_minimal_edge_cover(&out));
    Ok(out)
}

/// Which of the two part-sets [`bipartite_to_complete_cover`] tries to drop
/// first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RemovalOrder {
    #[default]
    Part1First,
    Part2First,
}

/// Adds both parts as members, giving a cover of the complete graph on
/// `V1 ∪ V2` of degree at most `d + 1`, then drops a part-member whenever the
/// rest still covers. The result is minimal.
pub fn bipartite_to_complete_cover(c: &CoverFamily) -> Result<CoverFamily> {
    bipartite_to_complete_cover_with(c, RemovalOrder::default())
}

pub fn bipartite_to_complete_cover_with(
    c: &CoverFamily,
    order: RemovalOrder,
) -> Result<CoverFamily> {
    let (left, right) = bipartite_parts(c)?;
    require_minimal(c, "bipartite_to_complete_cover")?;
    if left < 2 || right < 2 {
        return Err(Error::Contract(
            "both parts need at least two vertices".into(),
        ));
    }
    let host = HostGraph::Complete {
        order: left + right,
    };
    let p1 = c.host().part1();
    let p2 = c.host().part2();
    let mut members: Vec<VertexSet> = c.members().to_vec();
    members.push(p1.clone());
    members.push(p2.clone());
    let tries = match order {
        RemovalOrder::Part1First => [p1, p2],
        RemovalOrder::Part2First => [p2, p1],
    };
    for part in tries {
        let without: Vec<VertexSet> = members.iter().filter(|&m| *m != part).cloned().collect();
        let candidate = CoverFamily::new(c.labels().to_vec(), host, without.clone())?;
        if cover::is_edge_cover(&candidate) {
            members = without;
        }
    }
    let out = CoverFamily::new(c.labels().to_vec(), host, members)?;
    debug_assert!(cover::is_minimal_edge_cover(&out));
    Ok(out)
}

/// Whether `h` meets every set of `f` and no proper subset of `h` does.
pub fn is_minimal_cover_of(h: &BTreeSet<String>, f: &[BTreeSet<String>]) -> bool {
    minimal_cover_violation(h, f).is_none()
}

fn minimal_cover_violation(h: &BTreeSet<String>, f: &[BTreeSet<String>]) -> Option<String> {
    if let Some(missed) = f.iter().find(|s| s.is_disjoint(h)) {
        return Some(format!("{h:?} misses {missed:?}"));
    }
    for x in h {
        let private = f
            .iter()
            .any(|s| s.contains(x) && s.intersection(h).count() == 1);
        if !private {
            return Some(format!("{h:?} stays a cover without {x:?}"));
        }
    }
    None
}

fn dedup_family(f: &[BTreeSet<String>]) -> SetFamily {
    let set: BTreeSet<BTreeSet<String>> = f.iter().cloned().collect();
    set.into_iter().collect()
}

/// The edge cover `{ H_x ∪ F_x : x ∈ ⋃hh }` of the complete bipartite graph
/// with part 1 = `f` (vertices `F0, F1, ...`) and part 2 = `hh` (vertices
/// `H0, H1, ...`), families taken in sorted order.
///
/// Every `hh` member must be a minimal cover of `f`; the result is a minimal
/// edge cover with exactly `|⋃hh|` members, part-1 degree `≤ max |F|` and
/// part-2 degree `≤ max |H|`.
pub fn covers_union_to_edge_cover(
    f: &[BTreeSet<String>],
    hh: &[BTreeSet<String>],
) -> Result<CoverFamily> {
    let f = dedup_family(f);
    let hh = dedup_family(hh);
    if f.is_empty() || hh.is_empty() {
        return Err(Error::Domain("both families must be nonempty".into()));
    }
    for h in &hh {
        if let Some(why) = minimal_cover_violation(h, &f) {
            return Err(Error::Contract(format!("not a minimal cover: {why}")));
        }
    }
    let mut labels: Vec<String> = (0..f.len()).map(|i| format!("F{i}")).collect();
    labels.extend((0..hh.len()).map(|j| format!("H{j}")));
    let union: BTreeSet<&String> = hh.iter().flatten().collect();
    let members: Vec<VertexSet> = union
        .iter()
        .map(|x| {
            let fs = f
                .iter()
                .enumerate()
                .filter(|(_, s)| s.contains(*x))
                .map(|(i, _)| i);
            let hs = hh
                .iter()
                .enumerate()
                .filter(|(_, s)| s.contains(*x))
                .map(|(j, _)| f.len() + j);
            fs.chain(hs).collect()
        })
        .collect();
    let out = CoverFamily::new(
        labels,
        HostGraph::CompleteBipartite {
            left: f.len(),
            right: hh.len(),
        },
        members,
    )?;
    if out.len() != union.len() {
        return Err(Error::Contract(
            "two elements induce the same member".into(),
        ));
    }
    Ok(out)
}

/// The converse correspondence: members become elements named `m0, m1, ...`,
/// `f = {C_x : x ∈ V1}` and `hh = {C_y : y ∈ V2}`. Each `hh` member is a
/// minimal cover of `f`. Needs a minimal cover in which every element is
/// essential (see [`cover::prune_nonessential`]).
pub fn edge_cover_to_cover_family(c: &CoverFamily) -> Result<(SetFamily, SetFamily)> {
    let (left, _) = bipartite_parts(c)?;
    require_minimal(c, "edge_cover_to_cover_family")?;
    if !cover::all_essential(c) {
        return Err(Error::Contract(
            "every element of every member must be essential".into(),
        ));
    }
    let stars = c.stars();
    let star_names =
        |x: usize| -> BTreeSet<String> { stars[x].ones().map(|j| format!("m{j}")).collect() };
    let f: SetFamily = (0..left).map(star_names).collect();
    let hh: SetFamily = (left..c.host().order()).map(star_names).collect();
    Ok((dedup_family(&f), dedup_family(&hh)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::is_isomorphic;
    use crate::cover::{is_minimal_edge_cover, part_degrees};

    fn set(xs: &[&str]) -> BTreeSet<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn triangle() -> CoverFamily {
        CoverFamily::complete(&["x", "y", "z"], &[&["x", "y"], &["y", "z"], &["x", "z"]]).unwrap()
    }

    #[test]
    fn lower_bound_small_cases() {
        let c1 = lower_bound_cover(1).unwrap();
        assert_eq!(c1.len(), 1);
        assert_eq!(c1.members()[0].len(), 2);
        let c2 = lower_bound_cover(2).unwrap();
        assert_eq!(c2.len(), 4);
        assert_eq!(c2.labels(), &["u0", "u1", "v0", "v1"]);
        assert_eq!(part_degrees(&c2).unwrap(), (2, 2));
        let c4 = lower_bound_cover(4).unwrap();
        assert_eq!(c4.len(), 22);
        assert_eq!(
            c4.host(),
            HostGraph::CompleteBipartite { left: 8, right: 8 }
        );
        assert!(is_minimal_edge_cover(&c4));
        assert!(lower_bound_cover(0).is_err());
    }

    #[test]
    fn star_and_degree_of_h2_and_h3() {
        let c2 = lower_bound_cover(2).unwrap();
        let h = c2.to_hypergraph();
        assert_eq!(h.star(0).unwrap().len(), 2);
        let c3 = lower_bound_cover(3).unwrap();
        assert_eq!(part_degrees(&c3).unwrap(), (3, 3));
        assert!(c3.degrees().iter().all(|&d| d == 3));
        for i in 0..c3.len() {
            assert_eq!(cover::essential_elements(&c3, i).unwrap(), c3.members()[i]);
        }
        assert_eq!(
            lower_bound_cover(4).unwrap().to_hypergraph().max_degree(),
            4
        );
    }

    #[test]
    fn doubling_h1_is_h2() {
        let d = double_cover(&lower_bound_cover(1).unwrap()).unwrap();
        assert_eq!(d.len(), 4);
        assert!(is_isomorphic(&d, &lower_bound_cover(2).unwrap()).unwrap());
    }

    #[test]
    fn doubling_any_minimal_cover() {
        let one =
            CoverFamily::bipartite(&["a", "b", "c"], &["x", "y"], &[&["a", "b", "c", "x", "y"]])
                .unwrap();
        let d = double_cover(&one).unwrap();
        assert_eq!(d.len(), 4);
        assert_eq!(d.host(), HostGraph::CompleteBipartite { left: 6, right: 4 });
        assert!(is_minimal_edge_cover(&d));
        let dd = double_cover(&d).unwrap();
        assert_eq!(dd.len(), 10);
        let before = d.degrees();
        let after = dd.degrees();
        // vertex x of copy 0 keeps index x in part 1
        assert_eq!(after[0], before[0] + 1);

        let not_minimal = CoverFamily::bipartite(&["a"], &["x"], &[&["a", "x"], &["a"]]).unwrap();
        assert!(matches!(
            double_cover(&not_minimal),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn padded_triangle() {
        let h = cover_to_critical(&triangle()).unwrap();
        assert_eq!(h.edge_count(), 3);
        assert_eq!(h.vertex_count(), 5);
        assert_eq!(h.labels()[3..], ["pad0".to_string(), "pad1".to_string()]);
        assert!(invertibility::is_invertibility_critical(&h));
        assert_eq!(h.max_degree(), 2);
        for i in 0..3 {
            let p = padded_inverting_permutation(&triangle(), i).unwrap();
            assert!(p.inverts(&h.without_edge(i)).unwrap());
            assert!(!p.inverts(&h).unwrap());
        }

        let k2 = CoverFamily::complete(&["x", "y"], &[&["x", "y"]]).unwrap();
        let h = cover_to_critical(&k2).unwrap();
        assert_eq!((h.edge_count(), h.vertex_count()), (1, 3));
        assert!(invertibility::is_invertibility_critical(&h));
    }

    #[test]
    fn pad_names_avoid_collisions() {
        let c = CoverFamily::complete(
            &["pad0", "pad1", "z"],
            &[&["pad0", "pad1"], &["pad1", "z"], &["pad0", "z"]],
        )
        .unwrap();
        let h = cover_to_critical(&c).unwrap();
        assert_eq!(h.labels()[3..], ["_pad0".to_string(), "_pad1".to_string()]);
    }

    #[test]
    fn critical_projection() {
        let h = cover_to_critical(&triangle()).unwrap();
        let b = critical_to_bipartite_cover(&h).unwrap();
        assert!(is_minimal_edge_cover(&b));
        assert_eq!(b.len(), 3);
        let (d1, d2) = part_degrees(&b).unwrap();
        assert!(d1 <= 2 && d2 <= 2);

        let single = Hypergraph::from_labels(&["a", "b", "c"], &[&["a", "b"]]).unwrap();
        assert!(invertibility::is_invertibility_critical(&single));
        let b = critical_to_bipartite_cover(&single).unwrap();
        assert_eq!(b.len(), 1);
        assert!(is_minimal_edge_cover(&b));

        let invertible = Hypergraph::from_labels(&["a", "b", "c", "d"], &[&["a", "b"]]).unwrap();
        assert!(matches!(
            critical_to_bipartite_cover(&invertible),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn to_complete_cover() {
        let c2 = lower_bound_cover(2).unwrap();
        for order in [RemovalOrder::Part1First, RemovalOrder::Part2First] {
            let k = bipartite_to_complete_cover_with(&c2, order).unwrap();
            assert!(is_minimal_edge_cover(&k));
            assert!(k.max_degree() <= 3);
        }

        let one =
            CoverFamily::bipartite(&["a", "b"], &["x", "y"], &[&["a", "b", "x", "y"]]).unwrap();
        let k = bipartite_to_complete_cover(&one).unwrap();
        // the single member already covers both sides
        assert_eq!(k.len(), 1);
        assert!(is_minimal_edge_cover(&k));

        let thin = CoverFamily::bipartite(&["a"], &["x", "y"], &[&["a", "x", "y"]]).unwrap();
        assert!(matches!(
            bipartite_to_complete_cover(&thin),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn union_of_minimal_covers() {
        let c =
            covers_union_to_edge_cover(&[set(&["1", "2"])], &[set(&["1"]), set(&["2"])]).unwrap();
        assert_eq!(c.len(), 2);
        assert!(is_minimal_edge_cover(&c));

        let c = covers_union_to_edge_cover(&[set(&["1"])], &[set(&["1"])]).unwrap();
        assert_eq!(c.len(), 1);

        let err = covers_union_to_edge_cover(&[set(&["1", "2"])], &[set(&["1", "2"])]).unwrap_err();
        assert!(matches!(err, Error::Contract(_)));
    }

    #[test]
    fn edge_cover_to_families() {
        let c2 = lower_bound_cover(2).unwrap();
        let (f, hh) = edge_cover_to_cover_family(&c2).unwrap();
        assert_eq!((f.len(), hh.len()), (2, 2));
        assert!(hh.iter().all(|h| is_minimal_cover_of(h, &f)));
        let back = covers_union_to_edge_cover(&f, &hh).unwrap();
        assert_eq!(back.len(), c2.len());

        let one = CoverFamily::bipartite(&["a"], &["x"], &[&["a", "x"]]).unwrap();
        let (f, hh) = edge_cover_to_cover_family(&one).unwrap();
        assert_eq!(f, vec![set(&["m0"])]);
        assert_eq!(hh, vec![set(&["m0"])]);
    }

    #[test]
    fn two_sided_closed_form_is_exceeded() {
        // three disjoint pairs and all eight transversals
        let pairs = [["a", "b"], ["c", "d"], ["e", "f"]];
        let f: SetFamily = pairs.iter().map(|p| set(p)).collect();
        let mut hh = SetFamily::new();
        for mask in 0..8 {
            hh.push(
                (0..3)
                    .map(|i| pairs[i][(mask >> i) & 1].to_string())
                    .collect(),
            );
        }
        let c = covers_union_to_edge_cover(&f, &hh).unwrap();
        assert!(is_minimal_edge_cover(&c));
        assert_eq!(part_degrees(&c).unwrap(), (2, 3));
        assert_eq!(c.len(), 6);
        assert!(crate::bounds::b2_closed_form(2, 3).unwrap() < 6u8.into());
        assert!(crate::bounds::b2_level_sum(2, 3).unwrap() >= 6u8.into());
    }
}
