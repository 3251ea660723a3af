//! The coefficient expression language.
//!
//! cargo run --example parse_expressions -- "4*a - 3*a^2 + a^3 - 0.28"

use hopf_cert::problem::parse_poly;

fn main() {
    let inputs: Vec<String> = std::env::args().skip(1).collect();
    let inputs = if inputs.is_empty() {
        vec!["4 - 4*a^2".to_string(), "(1 + a)^3 / 2".into(), "-a^2".into(), "a^(-1)".into(), "2*b".into()]
    } else {
        inputs
    };
    for text in inputs {
        match parse_poly(&text) {
            Ok(p) => println!("{text:>24}  ->  {}   coefficients {:?}", p.to_expr_string("a"),
                p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>()),
            Err(e) => println!("{text:>24}  ->  {e}"),
        }
    }
}
