//! Fusion rings: axioms, Frobenius-Perron dimensions, grading and subrings.
use modcat::fusion::FusionRing;

fn main() -> modcat::Result<()> {
    // Fibonacci: τ⊗τ = 1 ⊕ τ
    let fib = FusionRing::new(2, vec![0, 1], &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1), (1, 1, 1, 1)])?;
    println!("Fibonacci valid: {}", fib.validate().is_valid());
    let fp = fib.fp_dims();
    println!("FPdims {:?}, global {:.6}", fp.dims, fp.global);

    // Rep(S₃): 1, sign, the 2-dimensional ρ with ρ⊗ρ = 1 ⊕ sign ⊕ ρ
    let rep_s3 = FusionRing::new(
        3,
        vec![0, 1, 2],
        &[
            (0, 0, 0, 1), (0, 1, 1, 1), (0, 2, 2, 1),
            (1, 0, 1, 1), (1, 1, 0, 1), (1, 2, 2, 1),
            (2, 0, 2, 1), (2, 1, 2, 1), (2, 2, 0, 1), (2, 2, 1, 1), (2, 2, 2, 1),
        ],
    )?;
    let grading = rep_s3.grading()?;
    println!("Rep(S3) universal grading group {:?}, degrees {:?}", grading.group.orders(), grading.degree);
    println!("invertibles {:?}", rep_s3.invertibles().elements);
    for sub in rep_s3.enumerate_subrings(rep_s3.rank())? {
        println!("  subring {:?}", sub.members());
    }

    let broken = FusionRing::new(2, vec![0, 1], &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 1, 1)])?;
    for v in broken.validate().violations {
        println!("violation: {v}");
    }
    Ok(())
}
