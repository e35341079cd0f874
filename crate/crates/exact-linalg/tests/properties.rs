use exact_linalg::{rat_int, smith_normal_form, Int, QMatrix, Rat};
use num::{BigInt, Integer, Signed, Zero};
use proptest::prelude::*;

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-5i64..=5, c), r)
    })
}

fn to_qmatrix(m: &[Vec<i64>]) -> QMatrix {
    let rows: Vec<Vec<Rat>> =
        m.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect();
    QMatrix::from_dense(&rows)
}

fn to_int_matrix(m: &[Vec<i64>]) -> Vec<Vec<Int>> {
    m.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect()
}

fn det(m: &[Vec<Int>]) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::from(1);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Int::from(0);
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Int>> = m[1..]
            .iter()
            .map(|row| {
                row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| v.clone()).collect()
            })
            .collect();
        let term = entry * det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

// gcd of all k-by-k minors, zero if all vanish
fn minor_gcd(m: &[Vec<Int>], k: usize) -> Int {
    let rows = m.len();
    let cols = m[0].len();
    let mut g = Int::from(0);
    for rsel in subsets(rows, k) {
        for csel in subsets(cols, k) {
            let sub: Vec<Vec<Int>> = rsel
                .iter()
                .map(|&i| csel.iter().map(|&j| m[i][j].clone()).collect())
                .collect();
            let d = det(&sub);
            g = g.gcd(&d);
        }
    }
    g
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

proptest! {
    #[test]
    fn rref_is_idempotent(m in small_matrix()) {
        let q = to_qmatrix(&m);
        let r1 = q.rref();
        let r2 = r1.matrix.rref();
        prop_assert_eq!(&r1.matrix, &r2.matrix);
        prop_assert_eq!(r1.pivots, r2.pivots);
    }

    #[test]
    fn rank_plus_nullity_is_cols(m in small_matrix()) {
        let q = to_qmatrix(&m);
        let rank = q.rank();
        let kernel = q.kernel_basis();
        prop_assert_eq!(rank + kernel.rows(), q.cols());
        // every kernel row really is in the kernel
        for i in 0..kernel.rows() {
            let v: Vec<Rat> = (0..q.cols()).map(|j| kernel.get(i, j)).collect();
            let img = q.mul_vec(&v);
            prop_assert!(img.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_recovers_a_solution(m in small_matrix(), x in proptest::collection::vec(-5i64..=5, 1..=4)) {
        let q = to_qmatrix(&m);
        prop_assume!(x.len() == q.cols());
        let xv: Vec<Rat> = x.iter().map(|&v| rat_int(v)).collect();
        let b = q.mul_vec(&xv);
        let sol = q.solve(&b).expect("consistent by construction");
        prop_assert_eq!(q.mul_vec(&sol), b);
    }

    #[test]
    fn snf_divisibility_and_minor_gcds(m in small_matrix()) {
        let im = to_int_matrix(&m);
        let inv = smith_normal_form(&im);
        for w in inv.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        // product of the first k invariant factors equals the gcd of k-minors
        let mut prod = BigInt::from(1);
        for (k, d) in inv.iter().enumerate() {
            prod *= d;
            prop_assert_eq!(&prod, &minor_gcd(&im, k + 1).abs());
        }
        // one past the last invariant all minors vanish
        let k = inv.len() + 1;
        if k <= m.len() && k <= m[0].len() {
            prop_assert!(minor_gcd(&im, k).is_zero());
        }
    }

    #[test]
    fn rowspace_sum_rank_bounds(a in small_matrix(), b in small_matrix()) {
        prop_assume!(a[0].len() == b[0].len());
        let qa = to_qmatrix(&a);
        let qb = to_qmatrix(&b);
        let s = qa.rowspace_sum(&qb);
        let ra = qa.rank();
        let rb = qb.rank();
        prop_assert!(s.rows() >= ra.max(rb));
        prop_assert!(s.rows() <= ra + rb);
    }
}
