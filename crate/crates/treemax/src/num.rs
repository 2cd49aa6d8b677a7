//! Small summation helpers shared by the numeric modules.

/// Neumaier-compensated sum. Keeps the rounding error of long reductions
/// near one ulp of the result, which the 1e-12 identity tests rely on.
pub(crate) fn neumaier_sum<I: IntoIterator<Item = f64>>(xs: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for x in xs {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Sum of `values` with the reduction tree following the node structure of a
/// uniform arity-`arity` tree: children of one node are combined before their
/// parents are. With power-of-two arity every block sum of equal values is
/// exact, which makes level conditioning preserve mass bit for bit.
pub(crate) fn tree_block_sum(values: &[f64], arity: usize) -> f64 {
    debug_assert!(arity >= 2);
    if values.len() <= 1 {
        return values.first().copied().unwrap_or(0.0);
    }
    debug_assert_eq!(values.len() % arity, 0);
    let child = values.len() / arity;
    let mut acc = 0.0;
    for i in 0..arity {
        acc += tree_block_sum(&values[i * child..(i + 1) * child], arity);
    }
    acc
}
