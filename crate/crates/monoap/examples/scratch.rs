use monoap::apcount::{count_mono_cyclic, ApFilter};
use monoap::constructions::{b11_template, b20, b22, ltimes};
use monoap::periodic::{density_upper_bound, generalized_count_table};

fn main() {
    let p220 = ltimes(&b11_template(), &b20()).unwrap();
    println!(
        "count(B11xB20) = {}",
        count_mono_cyclic(&p220, 4, ApFilter::All).unwrap()
    );
    for r in [2usize, 4, 6, 24, 46, 68, 218] {
        let t = generalized_count_table(&p220, 4, r).unwrap();
        let row: Vec<u64> = (0..8).map(|i| t[&i]).collect();
        println!("B11xB20 r={r}: {row:?}  density={}", density_upper_bound(&p220, 4, r).unwrap());
    }
    let p242 = ltimes(&b11_template(), &b22()).unwrap();
    println!(
        "count(B11xB22) = {}",
        count_mono_cyclic(&p242, 4, ApFilter::All).unwrap()
    );
    for r in [2usize, 4, 24, 240] {
        let t = generalized_count_table(&p242, 4, r).unwrap();
        let row: Vec<u64> = (0..8).map(|i| t[&i]).collect();
        println!("B11xB22 r={r}: {row:?}  density={}", density_upper_bound(&p242, 4, r).unwrap());
    }
}
