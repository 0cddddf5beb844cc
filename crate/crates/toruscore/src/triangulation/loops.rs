//! Embedded closed loops in the 1-skeleton.
//!
//! A knot is given as a cyclic sequence of edge classes. Construction
//! checks that the sequence really is a simple closed walk: the edges
//! chain up head to tail, no edge class repeats and no vertex class is
//! visited twice. A single edge whose endpoints coincide is the
//! shortest legal loop; two distinct edges between the same pair of
//! vertices form a legal bigon.

use super::Skeleton;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoopError {
    #[error("a loop needs at least one edge")]
    Empty,
    #[error("edge class {0} does not exist")]
    UnknownEdge(usize),
    #[error("a single-edge loop must have coinciding endpoints")]
    OpenEnd,
    #[error("edge classes {0} and {1} cannot be traversed consecutively")]
    NotAWalk(usize, usize),
    #[error("edge class {0} is traversed more than once")]
    RepeatedEdge(usize),
    #[error("vertex class {0} is visited more than once")]
    RepeatedVertex(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotLoop {
    edges: Vec<usize>,
    /// vertices[i] is the vertex from which edges[i] is traversed;
    /// the walk returns to vertices[0].
    vertices: Vec<usize>,
}

impl KnotLoop {
    pub fn new(sk: &Skeleton, edges: Vec<usize>) -> Result<Self, LoopError> {
        if edges.is_empty() {
            return Err(LoopError::Empty);
        }
        for &e in &edges {
            if e >= sk.edge_count() {
                return Err(LoopError::UnknownEdge(e));
            }
        }
        for (i, &e) in edges.iter().enumerate() {
            if edges[..i].contains(&e) {
                return Err(LoopError::RepeatedEdge(e));
            }
        }

        if edges.len() == 1 {
            let (tail, head) = sk.edge_endpoints(edges[0]);
            if tail != head {
                return Err(LoopError::OpenEnd);
            }
            return Ok(KnotLoop { vertices: vec![tail], edges });
        }

        // Try both endpoints of the first edge as the starting vertex;
        // remember the first failure for the error message.
        let (t0, h0) = sk.edge_endpoints(edges[0]);
        let mut failure = None;
        for start in [t0, h0] {
            match Self::walk(sk, &edges, start) {
                Ok(vertices) => {
                    let mut seen = vertices.clone();
                    seen.sort_unstable();
                    if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
                        return Err(LoopError::RepeatedVertex(w[0]));
                    }
                    return Ok(KnotLoop { edges, vertices });
                }
                Err(e) => failure = Some(failure.unwrap_or(e)),
            }
        }
        Err(failure.expect("at least one attempt"))
    }

    /// Walks the edge sequence starting such that edges[0] leaves
    /// `start`, returning the visited vertices.
    fn walk(sk: &Skeleton, edges: &[usize], start: usize) -> Result<Vec<usize>, LoopError> {
        let mut vertices = Vec::with_capacity(edges.len());
        let mut cur = start;
        for (i, &e) in edges.iter().enumerate() {
            let (tail, head) = sk.edge_endpoints(e);
            vertices.push(cur);
            cur = if cur == tail {
                head
            } else if cur == head {
                tail
            } else {
                let prev = edges[(i + edges.len() - 1) % edges.len()];
                return Err(LoopError::NotAWalk(prev, e));
            };
        }
        if cur != start {
            return Err(LoopError::NotAWalk(edges[edges.len() - 1], edges[0]));
        }
        Ok(vertices)
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Direction of traversal of edges[i] relative to the orientation
    /// of its edge class: +1 tail to head, -1 head to tail. A loop
    /// edge is always counted +1; for a single-edge knot the two
    /// directions represent inverse homology classes, which is
    /// immaterial to every consumer in this crate.
    pub fn direction(&self, sk: &Skeleton, i: usize) -> i8 {
        let (tail, head) = sk.edge_endpoints(self.edges[i]);
        if tail == head || self.vertices[i] == tail {
            1
        } else {
            -1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::Triangulation;

    fn lone_tet_skeleton() -> Skeleton {
        Triangulation::new(1).skeleton().unwrap()
    }

    #[test]
    fn triangle_loop_is_accepted() {
        let sk = lone_tet_skeleton();
        // Edges {0,1}, {1,2}, {0,2} of a lone tetrahedron: indices 0, 3, 1.
        let k = KnotLoop::new(&sk, vec![0, 3, 1]).unwrap();
        assert_eq!(k.len(), 3);
        let vs = k.vertices().to_vec();
        let mut sorted = vs.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 2]);
    }

    #[test]
    fn open_paths_and_repeats_are_rejected() {
        let sk = lone_tet_skeleton();
        assert_eq!(KnotLoop::new(&sk, vec![]).unwrap_err(), LoopError::Empty);
        assert_eq!(KnotLoop::new(&sk, vec![0]).unwrap_err(), LoopError::OpenEnd);
        assert_eq!(KnotLoop::new(&sk, vec![99]).unwrap_err(), LoopError::UnknownEdge(99));
        assert_eq!(
            KnotLoop::new(&sk, vec![0, 3, 3]).unwrap_err(),
            LoopError::RepeatedEdge(3)
        );
        // Edges {0,1} and {2,3} never meet.
        assert!(matches!(
            KnotLoop::new(&sk, vec![0, 5]).unwrap_err(),
            LoopError::NotAWalk(_, _)
        ));
        // Edges {0,1}, {1,2}, {2,3}, {3,0} close up through all four
        // vertices: a square, fine. Adding the diagonal breaks it.
        assert!(KnotLoop::new(&sk, vec![0, 3, 5, 2]).is_ok());
    }

    #[test]
    fn figure_eight_through_a_vertex_is_rejected() {
        let sk = lone_tet_skeleton();
        // {0,1}, {1,2}, {2,0} then {0,3} cannot close without
        // revisiting vertex 0.
        let err = KnotLoop::new(&sk, vec![0, 3, 1, 2]).unwrap_err();
        assert!(matches!(err, LoopError::NotAWalk(_, _) | LoopError::RepeatedVertex(_)));
    }
}
