//! Union-find, plain and with a parity bit on each edge of the forest.

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), rank: vec![0; n] }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Returns true if the two sets were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (hi, lo) = if self.rank[ra] >= self.rank[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[lo] = hi;
        if self.rank[ra] == self.rank[rb] {
            self.rank[hi] += 1;
        }
        true
    }
}

/// Union-find where every element carries a parity relative to its
/// root. Unions state a required parity between two elements; a union
/// contradicting an established relation is reported instead of
/// applied.
pub(crate) struct ParityUnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
    /// Parity relative to the parent link.
    parity: Vec<u8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct ParityConflict;

impl ParityUnionFind {
    pub fn new(n: usize) -> Self {
        ParityUnionFind { parent: (0..n).collect(), rank: vec![0; n], parity: vec![0; n] }
    }

    /// Root of `x` and the parity of `x` relative to that root.
    pub fn find(&mut self, x: usize) -> (usize, u8) {
        if self.parent[x] == x {
            return (x, 0);
        }
        let (root, p) = self.find(self.parent[x]);
        self.parent[x] = root;
        self.parity[x] ^= p;
        (root, self.parity[x])
    }

    /// Requires parity(a) xor parity(b) == rel.
    pub fn union(&mut self, a: usize, b: usize, rel: u8) -> Result<(), ParityConflict> {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return if pa ^ pb == rel { Ok(()) } else { Err(ParityConflict) };
        }
        let (hi, lo, plo) = if self.rank[ra] >= self.rank[rb] {
            (ra, rb, pa ^ pb ^ rel)
        } else {
            (rb, ra, pa ^ pb ^ rel)
        };
        self.parent[lo] = hi;
        self.parity[lo] = plo;
        if self.rank[ra] == self.rank[rb] {
            self.rank[hi] += 1;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_find_merges_and_finds() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(0, 1));
        assert!(uf.union(3, 4));
        assert!(!uf.union(1, 0));
        assert_eq!(uf.find(0), uf.find(1));
        assert_ne!(uf.find(0), uf.find(3));
    }

    #[test]
    fn parity_union_find_tracks_relations() {
        let mut uf = ParityUnionFind::new(4);
        uf.union(0, 1, 1).unwrap();
        uf.union(1, 2, 1).unwrap();
        let (r0, p0) = uf.find(0);
        let (r2, p2) = uf.find(2);
        assert_eq!(r0, r2);
        assert_eq!(p0 ^ p2, 0);
        // 0 and 2 are already known to agree.
        assert_eq!(uf.union(0, 2, 1), Err(ParityConflict));
        uf.union(0, 2, 0).unwrap();
    }
}
