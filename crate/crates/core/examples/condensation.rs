//! Condensing isotropic subgroups, modularization and Witt classes.
use modcat::condense_witt::{center_type, condense, isotropic_subgroups, modularize, witt_equivalent, IsotropicSubgroup};
use modcat::constructors::double_form;
use modcat::groups::PreMetricGroup;
use num_rational::Rational64;

fn main() -> modcat::Result<()> {
    // C(ℤ/2): every Lagrangian condenses to the trivial theory
    let m = double_form(&[2]);
    for h in isotropic_subgroups(&m)? {
        let c = condense(&m, &h)?;
        println!("H = {:?} (order {}) → condensed order {}", h.subgroup.elements(), h.order(), c.size());
    }

    // ℤ/4 with q(x) = x²/4 has an isotropic ℤ/2 but q(2) = 1 ≡ 0
    let m = PreMetricGroup::from_fn(vec![4], |x| Rational64::new((x[0] * x[0]) as i64, 4))?;
    let h = IsotropicSubgroup::new(&m, &[2])?;
    println!("ℤ/4 with x²/4 condenses to order {}", condense(&m, &h)?.size());

    let semion = PreMetricGroup::new(vec![2], vec![Rational64::new(0, 1), Rational64::new(1, 4)])?;
    let doubled = semion.direct_sum(&semion.negated());
    let cmp = witt_equivalent(&doubled, &PreMetricGroup::zero(vec![]))?;
    println!("semion ⊕ rev(semion) Witt-trivial: {}", cmp.equivalent);
    let cmp = witt_equivalent(&semion, &semion.negated())?;
    println!("semion ~ rev(semion): {}", cmp.equivalent);

    let rep_z2 = PreMetricGroup::zero(vec![2]);
    println!("Rep(ℤ/2) is {}", center_type(&rep_z2).kind.name());
    println!("modularized to order {}", modularize(&rep_z2)?.size());
    let svec = PreMetricGroup::new(vec![2], vec![Rational64::new(0, 1), Rational64::new(1, 2)])?;
    println!("sVec is {}", center_type(&svec).kind.name());
    Ok(())
}
