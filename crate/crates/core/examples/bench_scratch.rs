use mediatrix_core::construct::min_difference_cover;
use mediatrix_core::bounds::f_lower;
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let mut worst = (0usize, 0.0f64);
    for n in 3..=93usize {
        let t = Instant::now();
        let c = min_difference_cover(n, None).expect("cover within budget");
        let dt = t.elapsed().as_secs_f64();
        if dt > worst.1 { worst = (n, dt); }
        let f = f_lower(n).unwrap();
        assert!(c.k() >= f + 1, "n={n}");
        if n <= 60 { assert!(c.k() <= f + 2, "record violated at n={n}"); }
    }
    println!("sweep 3..=93 total {:.2}s, worst n={} {:.2}s", t0.elapsed().as_secs_f64(), worst.0, worst.1);
}
