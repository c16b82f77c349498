//! Non-unital channels: translation probes and the image of the Bloch ball.

use qutrit_cp::cp::cp_numeric;
use qutrit_cp::AffineChannelQutrit;

fn main() {
    for (x, y) in [(0.0, 0.0), (0.0, 0.05), (0.0, 0.19), (0.0, 0.2), (0.1, 0.0)] {
        let t1 = AffineChannelQutrit::translation_t1(x, y);
        let t2 = AffineChannelQutrit::translation_t2(x, y);
        let (v1, v2) = (cp_numeric(&t1, 1e-9), cp_numeric(&t2, 1e-9));
        println!(
            "(X,Y)=({x:.2},{y:.2})  T1 cp={:<5} min={:+.4}  T2 cp={:<5} min={:+.4}  |Lambda n + t| <= {:.4}",
            v1.is_cp, v1.min_eigenvalue, v2.is_cp, v2.min_eigenvalue, t1.ball_image_bound()
        );
    }

    // shrinking first leaves room for a translation
    let mut t = [0.0; 8];
    t[2] = 0.2;
    let lam = 0.5;
    let ch = AffineChannelQutrit::from_components([lam; 8], t);
    let v = cp_numeric(&ch, 1e-9);
    println!(
        "Lambda=0.5, t3=0.2: cp={} min={:+.4} ball bound {:.4}",
        v.is_cp,
        v.min_eigenvalue,
        ch.ball_image_bound()
    );
}
