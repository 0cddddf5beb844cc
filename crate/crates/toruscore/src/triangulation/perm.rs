//! Permutations of face corners.
//!
//! A face pairing carries one of the six permutations of (0, 1, 2),
//! listed in lexicographic order. Index `i` of a permutation is the
//! position of a corner within the sorted corner list of the source
//! face; the value is the position within the sorted corner list of
//! the target face.

pub const PERMS: [[u8; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Corners of each face, sorted. Face `f` is opposite vertex `f`.
pub const FACE_CORNERS: [[u8; 3]; 4] = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]];

/// Endpoints of each edge of a tetrahedron, sorted.
pub const EDGE_PAIRS: [(u8, u8); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Edge index of the pair {u, v}. Panics if u == v.
pub fn edge_index(u: u8, v: u8) -> u8 {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    EDGE_PAIRS
        .iter()
        .position(|&(x, y)| (x, y) == (a, b))
        .expect("distinct corners in 0..4") as u8
}

/// Position of `corner` within the sorted corner list of face `f`.
pub fn position_in_face(f: u8, corner: u8) -> u8 {
    FACE_CORNERS[f as usize]
        .iter()
        .position(|&c| c == corner)
        .expect("corner lies on face") as u8
}

pub fn perm_apply(p: u8, i: u8) -> u8 {
    PERMS[p as usize][i as usize]
}

pub fn perm_index(p: [u8; 3]) -> u8 {
    PERMS.iter().position(|&q| q == p).expect("valid permutation") as u8
}

pub fn perm_inverse(p: u8) -> u8 {
    let mut inv = [0u8; 3];
    for i in 0..3 {
        inv[PERMS[p as usize][i] as usize] = i as u8;
    }
    perm_index(inv)
}

/// Composition: first `a`, then `b`.
pub fn perm_compose(a: u8, b: u8) -> u8 {
    let mut c = [0u8; 3];
    for (i, slot) in c.iter_mut().enumerate() {
        *slot = perm_apply(b, perm_apply(a, i as u8));
    }
    perm_index(c)
}

pub fn perm_sign(p: u8) -> i8 {
    match p {
        0 | 3 | 4 => 1,
        _ => -1,
    }
}

/// The affine gluing as a map on all four corners: face corners of
/// `f1` go to face corners of `f2` through `p`, and the opposite
/// vertex `f1` goes to the opposite vertex `f2`.
pub fn corner_map(f1: u8, f2: u8, p: u8) -> [u8; 4] {
    let mut map = [0u8; 4];
    for i in 0..3 {
        let src = FACE_CORNERS[f1 as usize][i];
        let dst = FACE_CORNERS[f2 as usize][perm_apply(p, i as u8) as usize];
        map[src as usize] = dst;
    }
    map[f1 as usize] = f2;
    map
}

/// Sign of a permutation of (0, 1, 2, 3) given as its image tuple.
pub fn corner_map_sign(map: [u8; 4]) -> i8 {
    let mut inversions = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if map[i] > map[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_compose_are_consistent() {
        for p in 0..6u8 {
            assert_eq!(perm_compose(p, perm_inverse(p)), 0);
            assert_eq!(perm_compose(perm_inverse(p), p), 0);
            for q in 0..6u8 {
                for i in 0..3u8 {
                    assert_eq!(perm_apply(perm_compose(p, q), i), perm_apply(q, perm_apply(p, i)));
                }
            }
        }
    }

    #[test]
    fn signs_multiply() {
        for p in 0..6u8 {
            for q in 0..6u8 {
                assert_eq!(perm_sign(perm_compose(p, q)), perm_sign(p) * perm_sign(q));
            }
        }
    }

    #[test]
    fn corner_map_covers_all_corners() {
        for f1 in 0..4u8 {
            for f2 in 0..4u8 {
                for p in 0..6u8 {
                    let mut seen = [false; 4];
                    for c in corner_map(f1, f2, p) {
                        seen[c as usize] = true;
                    }
                    assert_eq!(seen, [true; 4]);
                }
            }
        }
    }

    #[test]
    fn identity_corner_map_has_positive_sign() {
        assert_eq!(corner_map_sign([0, 1, 2, 3]), 1);
        assert_eq!(corner_map_sign([1, 0, 2, 3]), -1);
        assert_eq!(corner_map_sign(corner_map(3, 3, 0)), 1);
    }

    #[test]
    fn edge_index_matches_pairs() {
        for (idx, &(u, v)) in EDGE_PAIRS.iter().enumerate() {
            assert_eq!(edge_index(u, v), idx as u8);
            assert_eq!(edge_index(v, u), idx as u8);
        }
    }
}
