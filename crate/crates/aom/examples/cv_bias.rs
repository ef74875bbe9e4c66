use aom::inference::{critical_value, CorrelationMatrix};

fn main() {
    let omega = CorrelationMatrix::identity(1);
    let mut sum = 0.0;
    let mut vals = Vec::new();
    for seed in 0..40u64 {
        let cv = critical_value(&omega, 0.05, None, 20_000, seed).unwrap();
        sum += cv;
        vals.push(cv);
    }
    vals.sort_by(f64::total_cmp);
    println!("mean={:.4} min={:.4} max={:.4} median={:.4}", sum / 40.0, vals[0], vals[39], vals[20]);
}
