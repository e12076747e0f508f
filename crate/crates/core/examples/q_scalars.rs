//! Exact arithmetic in the field of rational functions in `q`.

use num_rational::BigRational;
use qfibre::qscalar::{monopole_coefficient, QRat};

fn main() -> qfibre::Result<()> {
    let q = QRat::q();
    let one = QRat::one();
    let x = (&q - &one).checked_div(&(&(&q * &q) - &one))?;
    println!("(q - 1)/(q^2 - 1) = {x}");
    for n in [-2, -1, 0, 1, 2, 3] {
        let c = monopole_coefficient(n);
        let at_one = c.evaluate(&BigRational::from_integer(1.into()))?;
        println!("c({n}) = {c}    c({n})|q=1 = {at_one}");
    }
    Ok(())
}
