//! Normal curves on a boundary component: how the boundary of a
//! normal surface meets the boundary triangles, when such a curve is
//! connected, and when it is essential in a torus. The latter needs a
//! pair of loops generating the torus homology, delivered by the
//! tree-cotree decomposition.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{quad_cutting, NormalError, NormalSurfaceVector};
use crate::surface::BoundaryComponent;
use crate::triangulation::loops::KnotLoop;
use crate::triangulation::perm::FACE_CORNERS;
use crate::triangulation::Skeleton;
use crate::unionfind::UnionFind;

/// Arc counts on one boundary component: `counts[3i + j]` arcs cut
/// corner `j` of boundary triangle `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalCurveVector {
    pub counts: Vec<BigInt>,
}

impl NormalCurveVector {
    pub fn zeros(triangles: usize) -> Self {
        NormalCurveVector { counts: vec![BigInt::zero(); 3 * triangles] }
    }

    pub fn at(&self, tri: usize, corner: u8) -> &BigInt {
        &self.counts[3 * tri + corner as usize]
    }

    pub fn add(&mut self, tri: usize, corner: u8, n: impl Into<BigInt>) {
        self.counts[3 * tri + corner as usize] += n.into();
    }

    /// Crossings with the edge under side `s` of triangle `i`.
    pub fn crossings(&self, tri: usize, side: u8) -> BigInt {
        self.at(tri, side) + self.at(tri, (side + 1) % 3)
    }

    pub fn is_zero(&self) -> bool {
        self.counts.iter().all(Zero::is_zero)
    }
}

/// The trace of a normal surface on one boundary component.
pub fn boundary_curve(comp: &BoundaryComponent, x: &NormalSurfaceVector) -> NormalCurveVector {
    let mut c = NormalCurveVector::zeros(comp.complex.len());
    for (i, &(t, f)) in comp.face_slots.iter().enumerate() {
        for (j, &v) in FACE_CORNERS[f as usize].iter().enumerate() {
            c.counts[3 * i + j] = x.tri(t, v) + x.quad(t, quad_cutting(v, f));
        }
    }
    c
}

/// Whether the arcs link into a single circle. Arcs along a side are
/// ordered from the side's start corner: the arcs cutting that corner
/// come first, nearest first, then the arcs cutting the far corner,
/// nearest last.
pub fn curve_is_connected(comp: &BoundaryComponent, c: &NormalCurveVector) -> bool {
    let n = comp.complex.len();
    let mut base = vec![[0usize; 3]; n];
    let mut total = 0usize;
    let count = |i: usize, j: usize| -> usize {
        c.counts[3 * i + j].to_usize().expect("arc count exceeds address space")
    };
    for i in 0..n {
        for j in 0..3 {
            base[i][j] = total;
            total += count(i, j);
        }
    }
    if total == 0 {
        return false;
    }

    let mut uf = UnionFind::new(total);
    let instance = |i: usize, s: usize, p: usize| -> usize {
        let near = count(i, s);
        if p < near {
            base[i][s] + p
        } else {
            let far = count(i, (s + 1) % 3);
            base[i][(s + 1) % 3] + (near + far - 1 - p)
        }
    };
    for i in 0..n {
        for s in 0..3u8 {
            let Some(g) = comp.complex.side(i, s) else { continue };
            if (g.tri, g.side) < (i, s) {
                continue;
            }
            let width = count(i, s as usize) + count(i, (s as usize + 1) % 3);
            for p in 0..width {
                let p2 = if g.reversed { width - 1 - p } else { p };
                uf.union(instance(i, s as usize, p), instance(g.tri, g.side as usize, p2));
            }
        }
    }
    let root = uf.find(0);
    (1..total).all(|a| uf.find(a) == root)
}

/// A connected curve on a torus is essential exactly when it pairs
/// oddly with one of the generating loops: a nullhomotopic circle
/// crosses every loop an even number of times, and a connected
/// essential circle has a coprime class, which cannot vanish mod 2.
pub fn is_essential_curve(
    comp: &BoundaryComponent,
    c: &NormalCurveVector,
    m: &KnotLoop,
    l: &KnotLoop,
) -> Result<bool, NormalError> {
    if !curve_is_connected(comp, c) {
        return Err(NormalError::CurveNotConnected);
    }
    let parity = |gen: &KnotLoop| -> bool {
        let mut sum = BigInt::zero();
        for &e in gen.edges() {
            let (i, s) = comp.side_of_edge(e).expect("generator lies on the component");
            sum += c.crossings(i, s);
        }
        sum.bit(0)
    };
    Ok(parity(m) || parity(l))
}

/// Two simple loops in the 1-skeleton of a torus component generating
/// its first homology, by tree-cotree: edges outside a spanning tree
/// of the vertices and a spanning tree of the dual graph number
/// exactly two, and closing each against the vertex tree gives the
/// generator pair. Dual tree construction prefers edges that are not
/// single-vertex loops, so short generators survive where they exist.
pub fn torus_h1_generators(
    comp: &BoundaryComponent,
    sk: &Skeleton,
) -> Result<(KnotLoop, KnotLoop), NormalError> {
    let cx = &comp.complex;
    if !(cx.is_closed() && cx.connected() && cx.orientable() && cx.euler() == 0) {
        return Err(NormalError::NotATorus);
    }
    let n = cx.len();

    let mut vertices: Vec<usize> = comp.corner_vertex_class.iter().flatten().copied().collect();
    vertices.sort_unstable();
    vertices.dedup();
    let local = |class: usize| vertices.binary_search(&class).unwrap();

    let mut edges: Vec<usize> = comp.side_edge_class.iter().flatten().copied().collect();
    edges.sort_unstable();
    edges.dedup();
    // Endpoints and the two adjacent triangles of every edge class.
    let mut ends = vec![(usize::MAX, usize::MAX); edges.len()];
    let mut sides: Vec<Vec<usize>> = vec![Vec::new(); edges.len()];
    for i in 0..n {
        for j in 0..3usize {
            let e = edges.binary_search(&comp.side_edge_class[i][j]).unwrap();
            ends[e] = (
                local(comp.corner_vertex_class[i][j]),
                local(comp.corner_vertex_class[i][(j + 1) % 3]),
            );
            sides[e].push(i);
        }
    }

    let mut in_tree = vec![false; edges.len()];
    let mut uf = UnionFind::new(vertices.len());
    for (e, &(u, v)) in ends.iter().enumerate() {
        if uf.find(u) != uf.find(v) {
            uf.union(u, v);
            in_tree[e] = true;
        }
    }

    let mut order: Vec<usize> = (0..edges.len()).filter(|&e| !in_tree[e]).collect();
    order.sort_by_key(|&e| (ends[e].0 == ends[e].1, e));
    let mut duf = UnionFind::new(n);
    let mut leftover = Vec::new();
    for &e in &order {
        debug_assert_eq!(sides[e].len(), 2);
        let (a, b) = (sides[e][0], sides[e][1]);
        if duf.find(a) != duf.find(b) {
            duf.union(a, b);
        } else {
            leftover.push(e);
        }
    }
    assert_eq!(leftover.len(), 2, "torus tree-cotree leaves two edges");
    leftover.sort_by_key(|&e| (ends[e].0 != ends[e].1, edges[e]));

    // Parent pointers within the vertex tree.
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); vertices.len()];
    for (e, &(u, v)) in ends.iter().enumerate() {
        if in_tree[e] {
            adj[u].push((v, e));
            adj[v].push((u, e));
        }
    }
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; vertices.len()];
    let mut seen = vec![false; vertices.len()];
    let mut queue = std::collections::VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        for &(v, e) in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                parent[v] = Some((u, e));
                queue.push_back(v);
            }
        }
    }
    let chain = |mut v: usize| -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        while let Some((p, e)) = parent[v] {
            out.push((v, e));
            v = p;
        }
        out
    };

    let mut gens = Vec::new();
    for &e in &leftover {
        let (u, v) = ends[e];
        let walk: Vec<usize> = if u == v {
            vec![edges[e]]
        } else {
            let (mut cu, mut cv) = (chain(u), chain(v));
            while let (Some(a), Some(b)) = (cu.last(), cv.last()) {
                if a.1 == b.1 {
                    cu.pop();
                    cv.pop();
                } else {
                    break;
                }
            }
            // Cycle: ancestor path down to v, chord to u, path back up.
            let mut w: Vec<usize> = cv.iter().rev().map(|&(_, e2)| edges[e2]).collect();
            w.push(edges[e]);
            w.extend(cu.iter().map(|&(_, e2)| edges[e2]));
            w
        };
        gens.push(KnotLoop::new(sk, walk).expect("tree path plus chord is a simple loop"));
    }
    let l = gens.pop().unwrap();
    let m = gens.pop().unwrap();
    Ok((m, l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::homology::{chain_complex, winding_map};
    use num_traits::Signed;
    use crate::surface::boundary_components;
    use crate::triangulation::Triangulation;

    fn fan_boundary() -> (Triangulation, Skeleton, Vec<BoundaryComponent>) {
        let b = fixtures::solid_torus_fan(1);
        let sk = b.triangulation.skeleton().unwrap();
        let comps = boundary_components(&b.triangulation, &sk).unwrap();
        (b.triangulation.clone(), sk, comps)
    }

    #[test]
    fn fan_boundary_generators_are_short_and_independent() {
        let (tri, sk, comps) = fan_boundary();
        assert_eq!(comps.len(), 1);
        let (m, l) = torus_h1_generators(&comps[0], &sk).unwrap();
        // The vertical boundary loops are single self-loop edges; the
        // dual-tree bias keeps one of them as a generator.
        assert_eq!(m.len(), 1);
        assert!(!l.edges().is_empty());
        let cc = chain_complex(&tri, &sk);
        let wm = winding_map(&cc).unwrap();
        let (wm_m, wm_l) = (wm.winding(&sk, &m), wm.winding(&sk, &l));
        // A single vertical edge winds once; together the pair
        // generates the homology of the solid torus.
        assert_eq!(wm_m.clone().abs(), BigInt::from(1));
        assert_eq!(num_integer::Integer::gcd(&wm_m, &wm_l), BigInt::from(1));
    }

    #[test]
    fn vertex_link_circle_is_inessential() {
        let b = fixtures::solid_torus_fan(1);
        let sk = b.triangulation.skeleton().unwrap();
        let comps = boundary_components(&b.triangulation, &sk).unwrap();
        let comp = &comps[0];
        let class = b.vertex_class(&sk, (4, 0));
        let x = NormalSurfaceVector::vertex_link(&sk, class);
        let c = boundary_curve(comp, &x);
        assert!(!c.is_zero());
        assert!(curve_is_connected(comp, &c));
        let (m, l) = torus_h1_generators(comp, &sk).unwrap();
        assert_eq!(is_essential_curve(comp, &c, &m, &l), Ok(false));
    }

    #[test]
    fn doubled_link_circle_is_disconnected() {
        let b = fixtures::solid_torus_fan(1);
        let sk = b.triangulation.skeleton().unwrap();
        let comps = boundary_components(&b.triangulation, &sk).unwrap();
        let comp = &comps[0];
        let class = b.vertex_class(&sk, (4, 0));
        let mut x = NormalSurfaceVector::vertex_link(&sk, class);
        let copy = x.clone();
        x.scaled_add(&BigInt::from(1), &copy);
        let c = boundary_curve(comp, &x);
        assert!(!curve_is_connected(comp, &c));
        let (m, l) = torus_h1_generators(comp, &sk).unwrap();
        assert_eq!(
            is_essential_curve(comp, &c, &m, &l),
            Err(NormalError::CurveNotConnected)
        );
    }

    #[test]
    fn generators_work_on_taller_fixtures() {
        let b = fixtures::solid_torus_pillow(3);
        let sk = b.triangulation.skeleton().unwrap();
        let comps = boundary_components(&b.triangulation, &sk).unwrap();
        let (m, l) = torus_h1_generators(&comps[0], &sk).unwrap();
        let cc = chain_complex(&b.triangulation, &sk);
        let wm = winding_map(&cc).unwrap();
        assert_eq!(
            num_integer::Integer::gcd(&wm.winding(&sk, &m), &wm.winding(&sk, &l)),
            BigInt::from(1)
        );
    }

    #[test]
    fn empty_curve_is_not_connected() {
        let (_, sk, comps) = fan_boundary();
        let c = NormalCurveVector::zeros(comps[0].complex.len());
        assert!(!curve_is_connected(&comps[0], &c));
        let (m, l) = torus_h1_generators(&comps[0], &sk).unwrap();
        assert!(is_essential_curve(&comps[0], &c, &m, &l).is_err());
    }
}
