//! Counts of genera translated into counts for sets of polarized
//! superspecial abelian varieties.

use modlat::global::sigma_report;

fn main() {
    for (p, n) in [(2u64, 4usize), (3, 2), (3, 4), (5, 4), (7, 2), (7, 4), (11, 6), (23, 8)] {
        match sigma_report(p, n) {
            Ok(r) => {
                let det = r.forced_det.map_or("-".to_string(), |d| d.to_string());
                let s2 = r.sigma2_count.map_or("-".to_string(), |c| c.to_string());
                println!("p={p:<3} n={n}: nonempty={:<5} det={det:<4} σ1={} σ2={s2:<3} total={}", r.nonempty, r.sigma1_count, r.total);
            }
            Err(e) => println!("p={p} n={n}: {e}"),
        }
    }
}
