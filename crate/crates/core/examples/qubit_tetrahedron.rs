//! Unital qubit channels: the tetrahedron test against the 4x4 Choi matrix.

use qutrit_cp::cp::{qubit_cp, tetrahedron_membership};

fn main() {
    let points = [
        [1.0, 1.0, 1.0],
        [1.0, -1.0, -1.0],
        [-1.0, 1.0, -1.0],
        [-1.0, -1.0, 1.0],
        [0.0, 0.0, 0.0],
        [1.0, 1.0, -1.0],
        [0.6, 0.6, -0.3],
    ];
    for l in points {
        let v = qubit_cp(l, [0.0; 3], 1e-9);
        println!(
            "{l:?}: choi cp={:<5} tetrahedron={:<5} min eig {:+.3}",
            v.is_cp,
            tetrahedron_membership(l),
            v.min_eigenvalue
        );
    }
}
