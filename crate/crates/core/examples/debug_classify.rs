use projprod::matrix::{operator_distance, real, ComplexMatrix};
use projprod::random::{random_projection_pair, trial_rng};
use projprod::subspace::Tolerances;

fn main() {
    let tol = Tolerances::default();
    let mut rng = trial_rng(7, 15);
    let pair = random_projection_pair(&mut rng, 6, &tol);
    let t = pair.product();
    let svd = t.clone().svd(true, true);
    let u = svd.u.clone().unwrap();
    let vt = svd.v_t.clone().unwrap();
    let s = ComplexMatrix::from_diagonal(&svd.singular_values.map(|x| real(x)));
    let recon = &u * &s * &vt;
    println!("reconstruction err = {:.3e}", operator_distance(&t, &recon));
    println!("U unitary err = {:.3e}", operator_distance(&(u.adjoint() * &u), &ComplexMatrix::identity(6, 6)));
    println!("V unitary err = {:.3e}", operator_distance(&(vt.adjoint() * &vt), &ComplexMatrix::identity(6, 6)));
    // unordered variant
    let svd2 = t.clone().svd_unordered(true, true);
    let u2 = svd2.u.clone().unwrap();
    let vt2 = svd2.v_t.clone().unwrap();
    let s2 = ComplexMatrix::from_diagonal(&svd2.singular_values.map(|x| real(x)));
    println!("unordered sv: {:?}", svd2.singular_values.as_slice());
    println!("unordered reconstruction err = {:.3e}", operator_distance(&t, &(&u2 * &s2 * &vt2)));
}
