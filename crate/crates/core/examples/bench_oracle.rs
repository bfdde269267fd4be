use adlv::latoracle::*;
use std::time::Instant;

fn main() {
    // worst-case-ish single case: GL_3, q=2, m_max=3, depth=2, Mazur-empty
    let cfg = OracleConfig {
        n: 3, q: 2, m_max: 3, depth: 2,
        mu: vec![1, 0, 0], lambda: vec![2, -1, 0], w: vec![0, 1, 2],
        closure: false, max_lattices: 60_000,
    };
    let t0 = Instant::now();
    let rep = nonempty_oracle(&cfg).unwrap();
    println!("empty case: verdict {:?} consistent {:?} complete {} in {:?}", rep.verdict, rep.consistent, rep.complete, t0.elapsed());
    for w in &rep.windows { println!("  window m={} N={} size={} searched={}", w.field_degree, w.depth, w.size, w.searched); }

    // nonempty case: superbasic-ish GL_3
    let cfg2 = OracleConfig {
        n: 3, q: 2, m_max: 3, depth: 2,
        mu: vec![1, 0, 0], lambda: vec![1, 0, 0], w: vec![1, 2, 0],
        closure: false, max_lattices: 60_000,
    };
    let t0 = Instant::now();
    let rep2 = nonempty_oracle(&cfg2).unwrap();
    println!("nonempty case: verdict {:?} consistent {:?} in {:?}", rep2.verdict, rep2.consistent, t0.elapsed());

    // full point enumeration at depth 1, m<=3
    let cfg3 = OracleConfig {
        n: 3, q: 2, m_max: 3, depth: 1,
        mu: vec![1, 0, 0], lambda: vec![1, 0, 0], w: vec![1, 2, 0],
        closure: false, max_lattices: 2_000_000,
    };
    let t0 = Instant::now();
    let set = adlv_points(&cfg3).unwrap();
    println!("adlv_points n=3 m<=3 N=1: {} points / {} lattices in {:?}", set.points.len(), set.lattices_scanned, t0.elapsed());
}
