//! Quadratic forms on finite abelian groups and the pointed data they define.
use modcat::condense_witt::{central_charge_of_form, gauss_sum_of_form};
use modcat::constructors::pointed;
use modcat::groups::PreMetricGroup;
use num_rational::Rational64;

fn main() -> modcat::Result<()> {
    // q(x) = x²/8 on ℤ/4
    let m = PreMetricGroup::from_fn(vec![4], |x| Rational64::new((x[0] * x[0]) as i64, 8))?;
    let q: Vec<String> = m.q_values().iter().map(|r| r.to_string()).collect();
    println!("q values: {}", q.join(", "));
    println!("non-degenerate: {}", m.is_nondegenerate());
    println!("Gauss sum: {}", gauss_sum_of_form(&m));
    println!("central charge (as e^(2πic/8)): {}", central_charge_of_form(&m)?);

    let md = pointed(&m)?;
    println!("pointed data has rank {} and dim {}", md.rank(), md.global_dim());

    // a form that is not quadratic is rejected with a reason
    match PreMetricGroup::new(vec![2], vec![Rational64::new(0, 1), Rational64::new(1, 3)]) {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("rejected: {e}"),
    }

    let h = PreMetricGroup::hyperbolic(&[3]);
    println!("hyperbolic ℤ/3 ⊕ ℤ/3: radical order {}", h.radical().order());
    Ok(())
}
