//! Growth of Binomial(n, 1/n) moments against (p / ln p)^p n.
//!
//! Run with `cargo run --example corollary_growth`.

use tmx::extremal::corollary_growth;

fn main() -> tmx::Result<()> {
    let n_grid = [2, 5, 10, 20, 50];
    let p_grid: Vec<usize> = (2..=30).step_by(4).collect();
    let table = corollary_growth(&n_grid, &p_grid)?;
    print!("{:>4}", "p");
    for n in n_grid {
        print!("{:>12}", format!("n={n}"));
    }
    println!();
    for &p in &p_grid {
        print!("{p:>4}");
        for row in table.rows.iter().filter(|r| r.p == p) {
            print!("{:>12.5}", row.ratio);
        }
        println!();
    }
    let sup = table.sup().expect("nonempty grid");
    println!(
        "\nsup of value^(1/p) ln p / p n^(-1/p) = {:.6} at n = {}, p = {}",
        sup.ratio, sup.n, sup.p
    );
    Ok(())
}
