//! Formal brackets: Witt action, eigenvectors of L_0 and central terms.

use stardeform::vertex::{central_constraint_check, k_centrality_check, witt_identity_check, witt_identity_check_flipped, y_generator};

fn main() -> stardeform::Result<()> {
    let order = 6;
    let mut correct = 0;
    let mut flipped = 0;
    for n in -3..=3 {
        for l in -3..=3 {
            for m in -3..=3 {
                correct += usize::from(witt_identity_check(n, l, m, order)?);
                flipped += usize::from(witt_identity_check_flipped(n, l, m, order)?);
            }
        }
    }
    println!("[[L_n,L_l],x_m] = (l-n)[L_(n+l),x_m]: {correct}/343; with (n-l): {flipped}/343");
    println!("y_2 = {}", y_generator(2, 3));

    let rep = central_constraint_check(order, 3)?;
    println!("diagonal C_(m,-m) = m c_1: {}", rep.diagonal_ok);
    println!("nonzero off-diagonal C_(l,m): {:?}", rep.off_diagonal_nonzero);
    println!("y_0 central: {}", rep.y0_central);
    let kc = (-3..=3).all(|m| (-3..=3).all(|n| k_centrality_check(m, n, order).unwrap_or(false)));
    println!("K_(m,n) central: {kc}");
    Ok(())
}
