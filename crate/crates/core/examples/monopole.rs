//! The canonical connection on the quantum Hopf fibration in the 3D
//! calculus: `ω(Z^n) = c(n) w1`.

fn main() -> qfibre::Result<()> {
    let n = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(3);
    print!("{}", qfibre::gauge::monopole_report(n)?.render_text());
    Ok(())
}
