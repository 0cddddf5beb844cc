//! Reference triangulations: products of a triangulated disk with a
//! circle, and a few small hand-built spaces.
//!
//! The product builder stacks a prism over every disk triangle and
//! splits each prism into three tetrahedra along the staircase
//! determined by the global order of the disk vertices. Walls of
//! neighbouring prisms then carry the same diagonal, so all gluings
//! can be computed by matching corner labels instead of by hand.

use crate::exterior::knot_exterior;
use crate::handle::glue_solid_torus;
use crate::homology::{chain_complex, homology_groups, HomologyGroup};
use crate::normal::NormalSurfaceVector;
use crate::recognition::{choose_alpha, Certificate};
use crate::triangulation::loops::KnotLoop;
use crate::triangulation::perm::{perm_index, FACE_CORNERS};
use crate::triangulation::{Skeleton, Triangulation};

/// Disk vertex id together with a level of the circle direction.
/// Levels run from 0 to the section count; the top level is
/// identified with level 0 (through the twist) when gluing.
pub type Label = (usize, usize);

/// A triangulated disk: triangles over global vertex ids plus an
/// explicit pairing of triangle sides. Side `i` of triangle
/// `[a, b, c]` joins its corners `i` and `(i + 1) % 3`. Explicit
/// pairings allow doubled triangles, where matching sides by their
/// vertex pairs would be ambiguous.
#[derive(Debug, Clone)]
pub struct DiskTriangulation {
    pub vertex_count: usize,
    pub triangles: Vec<[usize; 3]>,
    pub pairings: Vec<((usize, u8), (usize, u8))>,
}

impl DiskTriangulation {
    /// Derives the side pairings from shared vertex pairs. Panics if
    /// some vertex pair occurs on more than two sides.
    pub fn simplicial(vertex_count: usize, triangles: Vec<[usize; 3]>) -> Self {
        let mut by_pair: Vec<((usize, usize), (usize, u8))> = Vec::new();
        let mut pairings = Vec::new();
        for (t, tri) in triangles.iter().enumerate() {
            assert!(tri[0] != tri[1] && tri[1] != tri[2] && tri[0] != tri[2]);
            for side in 0..3u8 {
                let key = side_key(tri, side);
                if let Some(pos) = by_pair.iter().position(|(k, _)| *k == key) {
                    let (_, other) = by_pair.swap_remove(pos);
                    pairings.push((other, (t, side)));
                } else {
                    by_pair.push((key, (t, side)));
                }
            }
        }
        let disk = DiskTriangulation { vertex_count, triangles, pairings };
        disk.check();
        disk
    }

    pub fn with_pairings(
        vertex_count: usize,
        triangles: Vec<[usize; 3]>,
        pairings: Vec<((usize, u8), (usize, u8))>,
    ) -> Self {
        let disk = DiskTriangulation { vertex_count, triangles, pairings };
        disk.check();
        disk
    }

    fn check(&self) {
        let mut used = Vec::new();
        for &(a, b) in &self.pairings {
            for (t, s) in [a, b] {
                assert!(t < self.triangles.len() && s < 3, "side out of range");
                assert!(!used.contains(&(t, s)), "side paired twice");
                used.push((t, s));
            }
            assert_eq!(
                side_key(&self.triangles[a.0], a.1),
                side_key(&self.triangles[b.0], b.1),
                "paired sides must carry the same vertex labels"
            );
            assert_ne!(a, b, "side paired with itself");
        }
        for tri in &self.triangles {
            assert!(tri.iter().all(|&v| v < self.vertex_count));
        }
    }

    /// Sides not in any pairing, i.e. the boundary of the disk.
    pub fn boundary_sides(&self) -> Vec<(usize, u8)> {
        let mut out = Vec::new();
        for t in 0..self.triangles.len() {
            for s in 0..3u8 {
                let in_pairing = self.pairings.iter().any(|&(a, b)| a == (t, s) || b == (t, s));
                if !in_pairing {
                    out.push((t, s));
                }
            }
        }
        out
    }
}

fn side_key(tri: &[usize; 3], side: u8) -> (usize, usize) {
    let u = tri[side as usize];
    let v = tri[(side as usize + 1) % 3];
    (u.min(v), u.max(v))
}

/// Product of a disk complex with a circle, with the tetrahedra
/// labelled by (disk vertex, level) corners.
pub struct ProductBuild {
    pub triangulation: Triangulation,
    /// Corner labels per tetrahedron, aligned with corner indices.
    pub labels: Vec<[Label; 4]>,
    pub sections: usize,
    pub disk: DiskTriangulation,
    pub twist: Vec<usize>,
}

/// Triangulates disk x circle with the given number of sections. The
/// twist, if any, is a simplicial automorphism of the disk applied
/// where the last section closes up to the first.
pub fn product_with_circle(
    disk: &DiskTriangulation,
    sections: usize,
    twist: Option<&[usize]>,
) -> ProductBuild {
    assert!(sections >= 1);
    let ntri = disk.triangles.len();
    let twist: Vec<usize> = match twist {
        Some(t) => {
            assert_eq!(t.len(), disk.vertex_count);
            t.to_vec()
        }
        None => (0..disk.vertex_count).collect(),
    };

    let mut labels: Vec<[Label; 4]> = Vec::with_capacity(3 * ntri * sections);
    for l in 0..sections {
        for t in 0..ntri {
            let mut tv = disk.triangles[t];
            tv.sort_unstable();
            let [a, b, c] = tv;
            labels.push([(a, l), (b, l), (c, l), (c, l + 1)]);
            labels.push([(a, l), (b, l), (b, l + 1), (c, l + 1)]);
            labels.push([(a, l), (a, l + 1), (b, l + 1), (c, l + 1)]);
        }
    }

    let mut tri = Triangulation::new(3 * ntri * sections);
    let prism = |t: usize, l: usize| -> [usize; 3] {
        let base = 3 * (l * ntri + t);
        [base, base + 1, base + 2]
    };

    // Interior walls of each prism.
    for l in 0..sections {
        for t in 0..ntri {
            let mut tv = disk.triangles[t];
            tv.sort_unstable();
            let [a, b, c] = tv;
            let p = prism(t, l);
            glue_matching(&mut tri, &labels, p, [(a, l), (b, l), (c, l + 1)]);
            glue_matching(&mut tri, &labels, p, [(a, l), (b, l + 1), (c, l + 1)]);
        }
    }

    // Stacking: top of each prism onto the bottom of the next level,
    // through the twist at the wrap.
    for l in 0..sections {
        for t in 0..ntri {
            let mut tv = disk.triangles[t];
            tv.sort_unstable();
            let [a, b, c] = tv;
            let top = find_face(&labels, prism(t, l), [(a, l + 1), (b, l + 1), (c, l + 1)]);
            let (dst_prism, map): ([usize; 3], Box<dyn Fn(Label) -> Label>) = if l + 1 < sections
            {
                (prism(t, l + 1), Box::new(|x| x))
            } else {
                // Identity twists skip the image lookup so that disks
                // with doubled triangles stay unambiguous.
                let t2 = if twist.iter().enumerate().all(|(i, &w)| i == w) {
                    t
                } else {
                    let image = [twist[tv[0]], twist[tv[1]], twist[tv[2]]];
                    triangle_with_vertices(disk, image)
                };
                let tw = twist.clone();
                (
                    prism(t2, 0),
                    Box::new(move |(v, lvl)| {
                        debug_assert_eq!(lvl, sections);
                        (tw[v], 0)
                    }),
                )
            };
            let want = [map((a, l + 1)), map((b, l + 1)), map((c, l + 1))];
            let bottom = find_face(&labels, dst_prism, want);
            glue_faces(&mut tri, &labels, top, bottom, &map);
        }
    }

    // Walls between paired prisms, two faces per wall.
    for &((t1, s1), (t2, s2)) in &disk.pairings {
        let (u, v) = side_key(&disk.triangles[t1], s1);
        debug_assert_eq!((u, v), side_key(&disk.triangles[t2], s2));
        for l in 0..sections {
            for want in [
                [(u, l), (v, l), (v, l + 1)],
                [(u, l), (u, l + 1), (v, l + 1)],
            ] {
                let f1 = find_face(&labels, prism(t1, l), want);
                let f2 = find_face(&labels, prism(t2, l), want);
                glue_faces(&mut tri, &labels, f1, f2, &|x| x);
            }
        }
    }

    ProductBuild { triangulation: tri, labels, sections, disk: disk.clone(), twist }
}

fn triangle_with_vertices(disk: &DiskTriangulation, mut want: [usize; 3]) -> usize {
    want.sort_unstable();
    let matches: Vec<usize> = disk
        .triangles
        .iter()
        .enumerate()
        .filter(|(_, tri)| {
            let mut tv = **tri;
            tv.sort_unstable();
            tv == want
        })
        .map(|(t, _)| t)
        .collect();
    assert_eq!(matches.len(), 1, "twist image triangle must be unique");
    matches[0]
}

fn find_face(labels: &[[Label; 4]], tets: [usize; 3], want: [Label; 3]) -> (usize, u8) {
    let mut want = want;
    want.sort_unstable();
    let mut found = None;
    for &t in &tets {
        for f in 0..4u8 {
            let mut have = FACE_CORNERS[f as usize].map(|c| labels[t][c as usize]);
            have.sort_unstable();
            if have == want {
                assert!(found.is_none(), "label set appears on two faces");
                found = Some((t, f));
            }
        }
    }
    found.expect("face with the requested labels")
}

/// Finds the two faces of one prism carrying the given label set and
/// glues them: the interior walls of the staircase decomposition.
fn glue_matching(
    tri: &mut Triangulation,
    labels: &[[Label; 4]],
    tets: [usize; 3],
    want: [Label; 3],
) {
    let mut w = want;
    w.sort_unstable();
    let mut hits = Vec::new();
    for &t in &tets {
        for f in 0..4u8 {
            let mut have = FACE_CORNERS[f as usize].map(|c| labels[t][c as usize]);
            have.sort_unstable();
            if have == w {
                hits.push((t, f));
            }
        }
    }
    assert_eq!(hits.len(), 2, "interior wall label set must appear twice");
    glue_faces(tri, labels, hits[0], hits[1], &|x| x);
}

/// Computes the pairing permutation by matching (mapped) labels and
/// records the gluing.
fn glue_faces(
    tri: &mut Triangulation,
    labels: &[[Label; 4]],
    (t1, f1): (usize, u8),
    (t2, f2): (usize, u8),
    map: &dyn Fn(Label) -> Label,
) {
    let mut perm = [0u8; 3];
    for i in 0..3 {
        let c = FACE_CORNERS[f1 as usize][i];
        let lab = map(labels[t1][c as usize]);
        let j = (0..3)
            .find(|&j| labels[t2][FACE_CORNERS[f2 as usize][j] as usize] == lab)
            .expect("matching corner label");
        perm[i] = j as u8;
    }
    tri.add_gluing(t1, f1, t2, f2, perm_index(perm)).expect("product gluing");
}

impl ProductBuild {
    pub fn size(&self) -> usize {
        self.triangulation.size()
    }

    /// Vertex class carrying the given label.
    pub fn vertex_class(&self, sk: &Skeleton, want: Label) -> usize {
        for (t, ls) in self.labels.iter().enumerate() {
            for (c, &l) in ls.iter().enumerate() {
                if l == want {
                    return sk.vertex_class[t * 4 + c];
                }
            }
        }
        panic!("no corner labelled {want:?}");
    }

    /// Edge class between two labels, if some tetrahedron carries both
    /// on a common edge.
    pub fn edge_between(&self, sk: &Skeleton, a: Label, b: Label) -> Option<usize> {
        use crate::triangulation::perm::EDGE_PAIRS;
        for (t, ls) in self.labels.iter().enumerate() {
            for (e, &(u, v)) in EDGE_PAIRS.iter().enumerate() {
                let have = (ls[u as usize], ls[v as usize]);
                if have == (a, b) || have == (b, a) {
                    return Some(sk.edge_class[t * 6 + e]);
                }
            }
        }
        None
    }

    /// Edge classes of the vertical circle over a disk vertex,
    /// following the twist until the loop closes.
    pub fn vertical_loop(&self, sk: &Skeleton, v: usize) -> Vec<usize> {
        let mut edges = Vec::new();
        let mut cur = v;
        loop {
            for l in 0..self.sections {
                let e = self
                    .edge_between(sk, (cur, l), (cur, l + 1))
                    .expect("vertical edge");
                edges.push(e);
            }
            cur = self.twist[cur];
            if cur == v {
                break;
            }
        }
        edges
    }

    /// Edge classes along a cyclic sequence of labels.
    pub fn loop_through(&self, sk: &Skeleton, labels: &[Label]) -> Vec<usize> {
        let k = labels.len();
        (0..k)
            .map(|i| {
                self.edge_between(sk, labels[i], labels[(i + 1) % k])
                    .unwrap_or_else(|| panic!("no edge {:?} to {:?}", labels[i], labels[(i + 1) % k]))
            })
            .collect()
    }

    /// Like [`Self::edge_between`] but restricted to the given
    /// tetrahedra, for builds where a label pair names two distinct
    /// edge classes.
    pub fn edge_between_in(
        &self,
        sk: &Skeleton,
        tets: &[usize],
        a: Label,
        b: Label,
    ) -> Option<usize> {
        use crate::triangulation::perm::EDGE_PAIRS;
        for &t in tets {
            for (e, &(u, v)) in EDGE_PAIRS.iter().enumerate() {
                let have = (self.labels[t][u as usize], self.labels[t][v as usize]);
                if have == (a, b) || have == (b, a) {
                    return Some(sk.edge_class[t * 6 + e]);
                }
            }
        }
        None
    }

    /// The two level-0 copies of the disk boundary form a bigon
    /// isotopic to the boundary of a meridian disk. Only meaningful
    /// for disks with exactly two boundary sides.
    pub fn meridian_bigon(&self, sk: &Skeleton) -> Vec<usize> {
        let sides = self.disk.boundary_sides();
        assert_eq!(sides.len(), 2, "meridian bigon needs a two-sided disk boundary");
        let mut meridian = Vec::new();
        for (t, s) in sides {
            let tets = [3 * t, 3 * t + 1, 3 * t + 2];
            let (u, v) = side_key(&self.disk.triangles[t], s);
            let e = self
                .edge_between_in(sk, &tets, (u, 0), (v, 0))
                .expect("wall carries its horizontal edge");
            meridian.push(e);
        }
        assert_ne!(meridian[0], meridian[1]);
        meridian
    }
}

/// Disk with a central vertex 0, an inner ring 1, 2, 3 and an outer
/// ring 4, 5, 6: three fan triangles and a six-triangle annulus. Its
/// product with a circle is a 27-tetrahedron solid torus per section
/// whose core is the vertical loop over the centre.
pub fn fan_disk() -> DiskTriangulation {
    DiskTriangulation::simplicial(
        7,
        vec![
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 1],
            [1, 2, 4],
            [2, 3, 5],
            [3, 1, 6],
            [2, 4, 5],
            [3, 5, 6],
            [1, 6, 4],
        ],
    )
}

/// Two triangles over the same vertices glued along two of their
/// sides: a disk with an interior centre vertex and a two-edge
/// boundary. The smallest disk whose product has a vertical boundary
/// loop of length two.
pub fn pillow_disk() -> DiskTriangulation {
    DiskTriangulation::with_pairings(
        3,
        vec![[0, 1, 2], [0, 1, 2]],
        vec![((0, 0), (1, 0)), ((0, 2), (1, 2))],
    )
}

pub fn solid_torus_fan(sections: usize) -> ProductBuild {
    product_with_circle(&fan_disk(), sections, None)
}

pub fn solid_torus_pillow(sections: usize) -> ProductBuild {
    product_with_circle(&pillow_disk(), sections, None)
}

/// Two tetrahedra glued along all four faces by the identity: the
/// 3-sphere.
pub fn doubled_tet() -> Triangulation {
    Triangulation::from_gluings(
        2,
        &[(0, 0, 1, 0, 0), (0, 1, 1, 1, 0), (0, 2, 1, 2, 0), (0, 3, 1, 3, 0)],
    )
    .unwrap()
}

/// The first single-tetrahedron solid torus in lexicographic order of
/// (face, face, permutation): two faces glued, orientable, torus
/// boundary, infinite cyclic first homology.
pub fn one_tet_solid_torus() -> Triangulation {
    for f1 in 0..4u8 {
        for f2 in f1 + 1..4 {
            for p in 0..6u8 {
                let mut t = Triangulation::new(1);
                if t.add_gluing(0, f1, 0, f2, p).is_err() {
                    continue;
                }
                let Ok(sk) = t.skeleton() else { continue };
                if !sk.orientable {
                    continue;
                }
                let bv = sk.vertex_boundary.iter().filter(|&&b| b).count() as i64;
                let be = sk.edge_boundary.iter().filter(|&&b| b).count() as i64;
                let bf = sk.face_boundary.iter().filter(|&&b| b).count() as i64;
                if bf != 2 || bv - be + bf != 0 {
                    continue;
                }
                let cc = chain_complex(&t, &sk);
                let h = homology_groups(&cc);
                if h[0] == HomologyGroup::free(1)
                    && h[1] == HomologyGroup::free(1)
                    && h[2].is_trivial()
                    && h[3].is_trivial()
                {
                    return t;
                }
            }
        }
    }
    unreachable!("a one-tetrahedron solid torus exists");
}

/// The one-section fan solid torus, its core loop, and a hand-built
/// certificate witnessing that the loop really is the core.
///
/// The annulus half lives in the knot exterior, over the disk arc
/// cutting corner 1 of triangle [1,2,4] and corner 4 of [1,6,4]: each
/// of the two prisms contributes two triangles and a quad along its
/// staircase. The disk half extends that annulus through the filling:
/// the filling curve is the vertical boundary loop at rim vertex 6, so
/// the attached handle covers the walls over disk edges (5,6) and
/// (6,4), and the annulus boundary circle on the (6,4) wall closes off
/// through the two handle tetrahedra over that wall and the cap on the
/// rim-4 side.
pub fn fan_core_certificate() -> (Triangulation, KnotLoop, Certificate) {
    let b = solid_torus_fan(1);
    let sk = b.triangulation.skeleton().expect("fixture validates");
    let k = KnotLoop::new(&sk, b.vertical_loop(&sk, 0)).expect("core loop is simple");
    let pos = |tets: &[usize], ambient: usize| {
        tets.iter().position(|&a| a == ambient).expect("tet survives to the exterior")
    };

    let ev = knot_exterior(&b.triangulation, &k).expect("core star is separated");
    let mut x = NormalSurfaceVector::zeros(ev.tri.size());
    for (t, v) in [(9, 0), (10, 0), (24, 1), (26, 2)] {
        x.set_tri(pos(&ev.ambient_tets, t), v, 1);
    }
    x.set_quad(pos(&ev.ambient_tets, 11), 0, 1);
    x.set_quad(pos(&ev.ambient_tets, 25), 2, 1);

    let alpha = choose_alpha(&b.triangulation).expect("fixture is a solid torus");
    assert_eq!(
        alpha.edges(),
        &b.vertical_loop(&sk, 6)[..],
        "the filling curve moved; the disk half must be re-derived"
    );
    let (filled, km) = glue_solid_torus(&b.triangulation, &k, &alpha).expect("filling succeeds");
    let em = knot_exterior(&filled, &km).expect("core star is separated");
    // The handle tetrahedra over the (6,4) wall and the cap the disk
    // closes through, located by their base gluings.
    let wall = |face: usize| filled.gluing(face, 0).expect("wall face is interior").tet;
    let w1 = wall(24);
    let w2 = wall(25);
    let cap = filled.gluing(w2, 2).expect("cap face is interior").tet;
    let mut y = NormalSurfaceVector::zeros(em.tri.size());
    for (t, v) in [(9, 0), (10, 0), (24, 1), (26, 2), (w1, 0), (cap, 3)] {
        y.set_tri(pos(&em.ambient_tets, t), v, 1);
    }
    y.set_quad(pos(&em.ambient_tets, 11), 0, 1);
    y.set_quad(pos(&em.ambient_tets, 25), 2, 1);
    y.set_quad(pos(&em.ambient_tets, w2), 0, 1);

    (b.triangulation, k, Certificate { annulus_vector: x, disk_vector: y })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{rotation_number, winding_map};
    use num_bigint::BigInt;

    fn boundary_euler(sk: &Skeleton) -> i64 {
        let bv = sk.vertex_boundary.iter().filter(|&&b| b).count() as i64;
        let be = sk.edge_boundary.iter().filter(|&&b| b).count() as i64;
        let bf = sk.face_boundary.iter().filter(|&&b| b).count() as i64;
        bv - be + bf
    }

    #[test]
    fn fan_solid_torus_has_expected_shape() {
        let b = solid_torus_fan(1);
        assert_eq!(b.size(), 27);
        let sk = b.triangulation.skeleton().unwrap();
        assert!(sk.orientable);
        assert_eq!(sk.vertex_count(), 7);
        assert_eq!(boundary_euler(&sk), 0);
        assert_eq!(sk.face_boundary.iter().filter(|&&x| x).count(), 6);
        let h = homology_groups(&chain_complex(&b.triangulation, &sk));
        assert_eq!(h[0], HomologyGroup::free(1));
        assert_eq!(h[1], HomologyGroup::free(1));
        assert!(h[2].is_trivial());
        assert!(h[3].is_trivial());
    }

    #[test]
    fn fan_with_two_sections_doubles() {
        let b = solid_torus_fan(2);
        assert_eq!(b.size(), 54);
        let sk = b.triangulation.skeleton().unwrap();
        assert_eq!(sk.vertex_count(), 14);
        let h = homology_groups(&chain_complex(&b.triangulation, &sk));
        assert_eq!(h[1], HomologyGroup::free(1));
    }

    #[test]
    fn pillow_solid_torus_has_expected_shape() {
        let b = solid_torus_pillow(1);
        assert_eq!(b.size(), 6);
        let sk = b.triangulation.skeleton().unwrap();
        assert!(sk.orientable);
        assert_eq!(boundary_euler(&sk), 0);
        let h = homology_groups(&chain_complex(&b.triangulation, &sk));
        assert_eq!(h[0], HomologyGroup::free(1));
        assert_eq!(h[1], HomologyGroup::free(1));
    }

    #[test]
    fn chain_complexes_square_to_zero() {
        let cases: Vec<Triangulation> = vec![
            Triangulation::new(1),
            doubled_tet(),
            one_tet_solid_torus(),
            solid_torus_fan(1).triangulation,
            solid_torus_fan(2).triangulation,
            solid_torus_pillow(1).triangulation,
            solid_torus_pillow(2).triangulation,
        ];
        for t in cases {
            let sk = t.skeleton().unwrap();
            let cc = chain_complex(&t, &sk);
            assert!(cc.d1.mul(&cc.d2).is_zero(), "d1*d2 != 0");
            assert!(cc.d2.mul(&cc.d3).is_zero(), "d2*d3 != 0");
        }
    }

    #[test]
    fn doubled_tet_is_a_homology_sphere() {
        let t = doubled_tet();
        let sk = t.skeleton().unwrap();
        let h = homology_groups(&chain_complex(&t, &sk));
        assert_eq!(h[0], HomologyGroup::free(1));
        assert!(h[1].is_trivial());
        assert!(h[2].is_trivial());
        assert_eq!(h[3], HomologyGroup::free(1));
    }

    #[test]
    fn core_of_fan_torus_winds_once() {
        let b = solid_torus_fan(1);
        let sk = b.triangulation.skeleton().unwrap();
        let core = b.vertical_loop(&sk, 0);
        assert_eq!(core.len(), 1);
        let knot = KnotLoop::new(&sk, core).unwrap();
        assert_eq!(rotation_number(&b.triangulation, &knot).unwrap(), BigInt::from(1));
    }

    #[test]
    fn core_of_two_section_fan_winds_once() {
        let b = solid_torus_fan(2);
        let sk = b.triangulation.skeleton().unwrap();
        let core = b.vertical_loop(&sk, 0);
        assert_eq!(core.len(), 2);
        let knot = KnotLoop::new(&sk, core).unwrap();
        assert_eq!(rotation_number(&b.triangulation, &knot).unwrap(), BigInt::from(1));
    }

    #[test]
    fn inner_ring_bounds_a_disk() {
        let b = solid_torus_fan(1);
        let sk = b.triangulation.skeleton().unwrap();
        let ring = b.loop_through(&sk, &[(1, 0), (2, 0), (3, 0)]);
        let knot = KnotLoop::new(&sk, ring).unwrap();
        assert_eq!(rotation_number(&b.triangulation, &knot).unwrap(), BigInt::from(0));
    }

    #[test]
    fn staircase_on_boundary_winds_once() {
        let b = solid_torus_fan(1);
        let sk = b.triangulation.skeleton().unwrap();
        // Diagonals ascend one level per outer-ring step, the walk
        // closes after one pass, so the total ascent is 1.
        let stairs = vec![
            b.edge_between(&sk, (4, 0), (5, 1)).unwrap(),
            b.edge_between(&sk, (5, 0), (6, 1)).unwrap(),
            b.edge_between(&sk, (4, 0), (6, 1)).unwrap(),
        ];
        let knot = KnotLoop::new(&sk, stairs).unwrap();
        assert_eq!(rotation_number(&b.triangulation, &knot).unwrap(), BigInt::from(1));
    }

    #[test]
    fn diagonal_double_step_winds_twice() {
        let b = solid_torus_fan(1);
        let sk = b.triangulation.skeleton().unwrap();
        let edges = vec![
            b.edge_between(&sk, (1, 0), (2, 1)).unwrap(),
            b.edge_between(&sk, (2, 0), (3, 1)).unwrap(),
            b.edge_between(&sk, (3, 0), (1, 0)).unwrap(),
        ];
        let knot = KnotLoop::new(&sk, edges).unwrap();
        assert_eq!(rotation_number(&b.triangulation, &knot).unwrap(), BigInt::from(2));
    }

    #[test]
    fn pillow_boundary_meridian_winds_zero() {
        let b = solid_torus_pillow(1);
        let sk = b.triangulation.skeleton().unwrap();
        let knot = KnotLoop::new(&sk, b.meridian_bigon(&sk)).unwrap();
        assert_eq!(rotation_number(&b.triangulation, &knot).unwrap(), BigInt::from(0));
    }

    #[test]
    fn one_tet_solid_torus_is_found() {
        let t = one_tet_solid_torus();
        let sk = t.skeleton().unwrap();
        assert!(sk.orientable);
        assert_eq!(boundary_euler(&sk), 0);
        let h = homology_groups(&chain_complex(&t, &sk));
        assert_eq!(h[1], HomologyGroup::free(1));
    }

    #[test]
    fn winding_map_rejects_non_cyclic_homology() {
        // The 3-sphere has trivial first homology.
        let t = doubled_tet();
        let sk = t.skeleton().unwrap();
        let cc = chain_complex(&t, &sk);
        assert!(winding_map(&cc).is_err());
    }

    #[test]
    fn twisted_fan_product_is_still_a_solid_torus() {
        // Rotate the disk by one third: centre fixed, both rings
        // advance cyclically.
        let twist = vec![0, 2, 3, 1, 5, 6, 4];
        let b = product_with_circle(&fan_disk(), 1, Some(&twist));
        let sk = b.triangulation.skeleton().unwrap();
        assert!(sk.orientable);
        let h = homology_groups(&chain_complex(&b.triangulation, &sk));
        assert_eq!(h[0], HomologyGroup::free(1));
        assert_eq!(h[1], HomologyGroup::free(1));
        // The core now closes after three passes.
        let core = b.vertical_loop(&sk, 0);
        assert_eq!(core.len(), 1);
        let q_loop = b.vertical_loop(&sk, 1);
        assert_eq!(q_loop.len(), 3);
    }
}
