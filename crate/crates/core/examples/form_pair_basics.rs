//! Building a pair (T, Q), its operator bundle and the model conversion.

use katolab::form::{adjoint_pair, assemble_bundle, from_accretive_model, make_form_pair, AccretiveModel};
use katolab::linalg::matrix::{ComplexMatrix, C64};
use katolab::linalg::spectral_norm;

fn main() -> katolab::Result<()> {
    let t = ComplexMatrix::from_real_rows(&[[0.0, 1.5, 0.0], [1.5, 0.5, -0.3], [0.0, -0.3, -1.0]]);
    let q = ComplexMatrix::from_real_rows(&[[2.0, 0.4, 0.0], [0.4, 1.0, 0.1], [0.0, 0.1, 0.05]]);
    let fp = make_form_pair(&t, &q, "demo")?;
    println!("dim {}  beta {:.4}  theta {:.4} rad  cond(Q) {:.2e}", fp.dim(), fp.beta(), fp.theta(), fp.cond_q());

    let b = assemble_bundle(&fp)?;
    let prod = &b.a_op * &b.l_dual_rep;
    let id = ComplexMatrix::identity(fp.dim());
    println!("||A_op L_dual - I||   = {:.2e}", (&prod - &id).frobenius_norm());
    println!("||L_H||_2             = {:.4}", spectral_norm(&b.l_h)?);

    let adj = adjoint_pair(&fp);
    println!("adjoint pair has T -> -T: {}", (adj.t().matrix() + fp.t().matrix()).max_abs() == 0.0);

    // <A S u, S v> with A = (1 + 0.3i) I converts to T = 0.3 I.
    let a = ComplexMatrix::identity(3).scale(C64::new(1.0, 0.3));
    let model = AccretiveModel::new(a, vec![1.0, 2.0, 4.0])?;
    let conv = from_accretive_model(&model)?;
    println!("converted T diagonal {:?}", conv.t().diag().iter().map(|z| z.re).collect::<Vec<_>>());
    println!("converted Q spectrum {:?}", conv.q().eig().values);
    Ok(())
}
