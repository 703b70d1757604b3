//! Small worked instances used by tests, the acceptance suite and the CLI
//! fixture files.

use crate::game::{GameClass, HedonicGame};
use crate::graph::SimpleGraph;
use crate::partition::Partition;
use crate::rational::int;

fn letters(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect()
}

/// Friendship graph on agents a..f: triangles abc and def joined by
/// a-d, a-e, b-d, b-e and c-f.
pub fn fig1_graph() -> SimpleGraph {
    let edges = [
        (0, 1),
        (1, 2),
        (0, 2),
        (3, 4),
        (4, 5),
        (3, 5),
        (0, 3),
        (1, 4),
        (0, 4),
        (1, 3),
        (2, 5),
    ];
    SimpleGraph::from_edges(6, &edges).expect("valid edges")
}

pub fn fig1_game() -> HedonicGame {
    HedonicGame::aeg_from_graph(&fig1_graph())
        .with_labels(letters(6))
        .expect("six labels")
}

/// `{a,b,d,e}, {c,f}`.
pub fn fig1_optimal() -> Partition {
    Partition::new(6, vec![vec![0, 1, 3, 4], vec![2, 5]]).expect("valid partition")
}

/// `{a,b,c}, {d,e,f}`.
pub fn fig1_triangles() -> Partition {
    Partition::new(6, vec![vec![0, 1, 2], vec![3, 4, 5]]).expect("valid partition")
}

/// Triangle abc with a pendant edge b-d.
pub fn fig3_graph() -> SimpleGraph {
    SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (1, 3)]).expect("valid edges")
}

pub fn fig3_game() -> HedonicGame {
    HedonicGame::aeg_from_graph(&fig3_graph())
        .with_labels(letters(4))
        .expect("four labels")
}

/// `{a,c}, {b,d}`.
pub fn fig3_optimal() -> Partition {
    Partition::new(4, vec![vec![0, 2], vec![1, 3]]).expect("valid partition")
}

/// Four agents where `a` and `c` each like their partner much more than
/// they are liked back.
pub fn asymmetric_four() -> HedonicGame {
    let table = [
        [0, 4, 1, -10],
        [0, 0, -10, 1],
        [1, -10, 0, 4],
        [-10, 1, 0, 0],
    ];
    HedonicGame::from_fn(4, GameClass::General, |i, j| int(table[i][j]))
        .and_then(|g| g.with_labels(letters(4)))
        .expect("valid game")
}
