//! Small hand-built instances used by tests, examples and the acceptance run.

use crate::graph::{TemporalEdge, TemporalGraph, TemporalPath, VertexColoring};

pub const RED: u32 = 1;
pub const GREEN: u32 = 2;
pub const BLUE: u32 = 3;
pub const YELLOW: u32 = 4;

pub const U1: usize = 0;
pub const U2: usize = 1;
pub const U3: usize = 2;
pub const U4: usize = 3;
pub const U5: usize = 4;

/// Edge records of the five-vertex running example, labels `u1..u5`.
pub const FIGURE2_EDGES: &str = "\
u1 u2 3
u2 u3 1
u3 u4 3
u4 u5 1
u5 u1 2
u2 u5 4
u3 u5 5
";

/// Colors: red = 1, green = 2, blue = 3, yellow = 4.
pub const FIGURE2_COLORS: &str = "\
u1 1
u2 3
u3 4
u4 1
u5 2
";

/// The five-vertex running example (undirected, `t = 5`).
pub fn figure2() -> (TemporalGraph, VertexColoring) {
    let edges = vec![
        TemporalEdge::new(U1, U2, 3),
        TemporalEdge::new(U2, U3, 1),
        TemporalEdge::new(U3, U4, 3),
        TemporalEdge::new(U4, U5, 1),
        TemporalEdge::new(U5, U1, 2),
        TemporalEdge::new(U2, U5, 4),
        TemporalEdge::new(U3, U5, 5),
    ];
    let g = TemporalGraph::new(5, false, edges).expect("static fixture");
    (g, VertexColoring::new(vec![RED, BLUE, YELLOW, RED, GREEN]))
}

/// `u4 -1- u5 -2- u1 -3- u2`, colors {red, green, red, blue}.
pub fn figure2_witness() -> TemporalPath {
    TemporalPath::from_hops(U4, &[(U5, 1), (U1, 2), (U2, 3)])
}

/// `u1 -3- u2 -4- u5 -5- u3`, colors {red, blue, green, yellow}.
pub fn figure3_witness() -> TemporalPath {
    TemporalPath::from_hops(U1, &[(U2, 3), (U5, 4), (U3, 5)])
}

/// Three vertices, each pair of consecutive vertices joined at times 1 and 2.
pub fn figure5() -> (TemporalGraph, VertexColoring) {
    let edges = vec![
        TemporalEdge::new(0, 1, 1),
        TemporalEdge::new(0, 1, 2),
        TemporalEdge::new(1, 2, 1),
        TemporalEdge::new(1, 2, 2),
    ];
    let g = TemporalGraph::new(3, false, edges).expect("static fixture");
    (g, VertexColoring::new(vec![1, 2, 3]))
}
