use super::UniPoly;

/// `Res_x(f(x), y - r(x))` as a polynomial in `y`. Its roots are the values
/// `r(z)` over the complex roots `z` of `f`.
pub fn resultant_y_minus(f: &UniPoly, r: &UniPoly) -> UniPoly {
    let m = f.degree().unwrap_or(0);
    let Some(n) = r.degree().filter(|&n| n > 0) else {
        // y - r0 has x-degree 0, so the resultant is (y - r0)^deg f.
        let root = r.coeff(0);
        return UniPoly::linear_root(&root).pow(m as u32);
    };
    if m == 0 {
        return UniPoly::constant(f.coeff(0).clone()).pow(n as u32);
    }
    // Coefficients of y - r(x) as polynomials in y, ascending in x.
    let b: Vec<UniPoly> = (0..=n)
        .map(|i| {
            let c = UniPoly::constant(-r.coeff(i));
            if i == 0 {
                &c + &UniPoly::x()
            } else {
                c
            }
        })
        .collect();
    let a: Vec<UniPoly> = (0..=m).map(|i| UniPoly::constant(f.coeff(i))).collect();

    let size = m + n;
    let mut mat = vec![vec![UniPoly::zero(); size]; size];
    for row in 0..n {
        for (i, c) in a.iter().enumerate() {
            mat[row][row + m - i] = c.clone();
        }
    }
    for row in 0..m {
        for (i, c) in b.iter().enumerate() {
            mat[n + row][row + n - i] = c.clone();
        }
    }
    bareiss_det(mat)
}

/// Fraction-free determinant over `ℚ[y]`.
fn bareiss_det(mut mat: Vec<Vec<UniPoly>>) -> UniPoly {
    let size = mat.len();
    let mut negate = false;
    let mut prev = UniPoly::one();
    for k in 0..size {
        if mat[k][k].is_zero() {
            let Some(swap) = (k + 1..size).find(|&i| !mat[i][k].is_zero()) else {
                return UniPoly::zero();
            };
            mat.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &(&mat[i][j] * &mat[k][k]) - &(&mat[i][k] * &mat[k][j]);
                mat[i][j] = num.div_exact(&prev);
            }
            mat[i][k] = UniPoly::zero();
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}
