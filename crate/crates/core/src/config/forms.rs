//! Explicit polynomials attached to the catalog configurations: ideal
//! generators, unexpected cones, coefficient lists and the Fermat maps.
//!
//! Coordinates are `x, y, z, w` and parameters `a, b, c, d`; `u` is the
//! golden ratio of the field.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{binomial, default_names, monomials, parse_poly, BihomForm, Mono, MultiPoly, Side, Symbols};

fn symbols<F: Field>(field: &F, k: usize, side: Side, golden: bool) -> Result<Symbols<F::Elem>> {
    let syms = Symbols::new(default_names(k, side));
    Ok(if golden { syms.with_const("u", field.golden_ratio()?) } else { syms })
}

fn parse_list<F: Field>(
    field: &F,
    k: usize,
    side: Side,
    golden: bool,
    texts: &[&str],
) -> Result<Vec<MultiPoly<F::Elem>>> {
    let syms = symbols(field, k, side, golden)?;
    texts.iter().map(|t| parse_poly(field, t, &syms)).collect()
}

fn product<F: Field>(field: &F, factors: &[&MultiPoly<F::Elem>]) -> Result<MultiPoly<F::Elem>> {
    let mut acc = MultiPoly::constant(field, factors[0].nvars(), field.one());
    for f in factors {
        acc = acc.mul(field, f)?;
    }
    Ok(acc)
}

/// The six quartic generators `xy(x^2-y^2), ...` of `I(B4)`.
pub fn b4_quartics<F: Field>(field: &F) -> Result<Vec<MultiPoly<F::Elem>>> {
    parse_list(
        field,
        4,
        Side::X,
        false,
        &["xy(x^2-y^2)", "xz(x^2-z^2)", "xw(x^2-w^2)", "yz(y^2-z^2)", "yw(y^2-w^2)", "zw(z^2-w^2)"],
    )
}

/// The unexpected quartic cones of `B4`, as printed in terms of the
/// generators of `I(B4)`.
pub const B4_CONE: &str = "3ad(c^2-b^2)x^2yz+3bd(a^2-c^2)xy^2z+3cd(b^2-a^2)xyz^2\
+3ac(b^2-d^2)x^2yw+3bc(d^2-a^2)xy^2w+3dc(a^2-b^2)xyw^2\
+3ab(d^2-c^2)x^2zw+3cb(a^2-d^2)xz^2w+3db(c^2-a^2)xzw^2\
+3ba(c^2-d^2)y^2zw+3ca(d^2-b^2)yz^2w+3da(b^2-c^2)yzw^2\
+cd(d^2-c^2)xy(x^2-y^2)+bd(b^2-d^2)xz(x^2-z^2)+bc(c^2-b^2)xw(x^2-w^2)\
+ad(d^2-a^2)yz(y^2-z^2)+ac(a^2-c^2)yw(y^2-w^2)+ab(b^2-a^2)zw(z^2-w^2)";

pub fn b4_cone<F: Field>(field: &F) -> Result<BihomForm<F::Elem>> {
    BihomForm::parse(field, B4_CONE, 4, (4, 4), &[])
}

/// `m_0, ..., m_11`, the quartic generators of `I(F4)`.
pub fn f4_generators<F: Field>(field: &F) -> Result<Vec<MultiPoly<F::Elem>>> {
    parse_list(
        field,
        4,
        Side::X,
        false,
        &[
            "xy(x^2-y^2)",
            "xy(z^2-w^2)",
            "xz(x^2-z^2)",
            "xz(y^2-w^2)",
            "xw(x^2-w^2)",
            "xw(z^2-y^2)",
            "yz(y^2-z^2)",
            "yz(x^2-w^2)",
            "yw(y^2-w^2)",
            "yw(x^2-z^2)",
            "zw(z^2-w^2)",
            "zw(x^2-y^2)",
        ],
    )
}

/// Coefficients of `m_0, ..., m_11` in the cone equation of `F4`.
pub fn f4_cone_coefficients<F: Field>(field: &F) -> Result<Vec<MultiPoly<F::Elem>>> {
    parse_list(
        field,
        4,
        Side::A,
        false,
        &[
            "cd(d^2-c^2)",
            "3cd(b^2-a^2)",
            "bd(b^2-d^2)",
            "3bd(a^2-c^2)",
            "bc(c^2-b^2)",
            "3bc(a^2-d^2)",
            "ad(d^2-a^2)",
            "3ad(c^2-b^2)",
            "ac(a^2-c^2)",
            "3ac(b^2-d^2)",
            "ab(b^2-a^2)",
            "3ab(d^2-c^2)",
        ],
    )
}

pub fn f4_cone<F: Field>(field: &F) -> Result<BihomForm<F::Elem>> {
    let pairs: Vec<_> = f4_cone_coefficients(field)?
        .into_iter()
        .zip(f4_generators(field)?)
        .collect();
    BihomForm::from_pairs(field, &pairs, (4, 4))
}

/// The printed linear presentation of `(m_0, ..., m_11)`: 12 rows, 16
/// columns, entries in `x, y, z, w` and the stray symbol `t` (fifth variable).
pub const F4_PRESENTATION: [[&str; 16]; 12] = [
    ["-z", "0", "0", "0", "0", "0", "-w", "0", "0", "0", "0", "0", "0", "0", "0", "0"],
    ["y", "-y", "0", "0", "0", "0", "0", "0", "0", "0", "-w", "0", "0", "0", "0", "0"],
    ["0", "x", "-y", "0", "-z", "0", "0", "0", "0", "0", "0", "0", "-w", "0", "0", "0"],
    ["-y", "0", "x", "-y", "0", "-z", "0", "0", "0", "0", "0", "w", "0", "0", "-w", "0"],
    ["0", "0", "0", "x", "0", "0", "0", "0", "0", "0", "0", "0", "0", "w", "0", "-w"],
    ["z", "-z", "0", "z", "x", "y", "-w", "w", "0", "-w", "0", "0", "0", "0", "0", "0"],
    ["0", "0", "0", "0", "0", "0", "y", "-y", "0", "0", "z", "-z", "0", "0", "0", "0"],
    ["0", "0", "0", "0", "w", "0", "0", "x", "-y", "0", "0", "0", "z", "-z", "0", "0"],
    ["0", "0", "0", "0", "0", "w", "-y", "0", "x", "-y", "0", "0", "0", "0", "z", "0"],
    ["0", "0", "0", "0", "0", "0", "0", "0", "0", "x", "0", "0", "0", "0", "0", "z"],
    ["0", "0", "t", "0", "0", "0", "0", "0", "z", "0", "0", "x", "0", "y", "0", "0"],
    ["0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "-x", "0", "y", "0", "x", "-y"],
];

/// Result of multiplying the generator row `(m_0, ..., m_11)` into the
/// presentation matrix, column by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyCheck {
    /// Columns whose product is not zero.
    pub failing_columns: Vec<usize>,
    /// Entries that use a symbol outside `x, y, z, w`, as `(row, column)`.
    pub foreign_entries: Vec<(usize, usize)>,
}

pub fn f4_syzygy_check<F: Field>(field: &F) -> Result<SyzygyCheck> {
    let mut names = default_names(4, Side::X);
    names.push("t".into());
    let syms = Symbols::new(names);
    let gens: Vec<_> = f4_generators(field)?.iter().map(|g| g.embed(5, 0)).collect();
    let mut failing = Vec::new();
    let mut foreign = Vec::new();
    for col in 0..16 {
        let mut acc = MultiPoly::zero(5);
        for (row, g) in gens.iter().enumerate() {
            let e = parse_poly(field, F4_PRESENTATION[row][col], &syms)?;
            if e.terms().any(|(m, _)| m.0[4] > 0) {
                foreign.push((row, col));
            }
            acc = acc.add(field, &e.mul(field, g)?)?;
        }
        if !acc.is_zero() {
            failing.push(col);
        }
    }
    Ok(SyzygyCheck { failing_columns: failing, foreign_entries: foreign })
}

const H3_LINES: [&str; 6] = ["y-(u-1)z", "y+(u-1)z", "x-uz", "x+uz", "x-(u-1)y", "x+(u-1)y"];
const H3_CONJUGATE_LINES: [&str; 6] = ["y+uz", "y-uz", "x-(1-u)z", "x+(1-u)z", "x+uy", "x-uy"];

/// `L_1, ..., L_6`: the lines through five points of `H3`.
pub fn h3_lines<F: Field>(field: &F) -> Result<Vec<MultiPoly<F::Elem>>> {
    parse_list(field, 3, Side::X, true, &H3_LINES)
}

/// `M_1, ..., M_6`: the Galois conjugates of `L_1, ..., L_6`.
pub fn h3_conjugate_lines<F: Field>(field: &F) -> Result<Vec<MultiPoly<F::Elem>>> {
    parse_list(field, 3, Side::X, true, &H3_CONJUGATE_LINES)
}

/// `f_i`: the product of all lines but `L_i`.
pub fn h3_quintics<F: Field>(field: &F) -> Result<Vec<MultiPoly<F::Elem>>> {
    let lines = h3_lines(field)?;
    (0..6)
        .map(|i| {
            let others: Vec<_> = lines.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, l)| l).collect();
            product(field, &others)
        })
        .collect()
}

/// `g_1, ..., g_13`, spanning `I(H3)_6`.
pub fn h3_sextics<F: Field>(field: &F) -> Result<Vec<MultiPoly<F::Elem>>> {
    let l = h3_lines(field)?;
    let f = h3_quintics(field)?;
    // (line index, quintic index), zero based
    let pairs = [
        (0, 0), (0, 1), (0, 2), (0, 3), (0, 4), (0, 5),
        (1, 0), (1, 2), (1, 3), (1, 4), (1, 5),
        (2, 0), (2, 1),
    ];
    pairs.iter().map(|&(i, j)| l[i].mul(field, &f[j])).collect()
}

/// `h_1, ..., h_13`: coefficients of `g_1, ..., g_13` in the unexpected
/// sextic of `H3`.
pub fn h3_cone_coefficients<F: Field>(field: &F) -> Result<Vec<MultiPoly<F::Elem>>> {
    parse_list(
        field,
        3,
        Side::A,
        true,
        &[
            "(7/2u+2)*b*(b^4+(-44u+72)ab^2c+(-6u+8)b^2c^2+(-4u+12)ac^3+(u-3)c^4)",
            "(-10u-5)/4*(a+(u+2)/5*b+(-3u-1)/5*c)(b+(u-1)c)^4",
            "(2u-1)/4*(a+(u+2)b+(u-1)c)(a-uc)^4",
            "(-2u+1)/4*(a-(u+2)b-(u-1)c)(a+uc)^4",
            "(4u+3)/4*(a-(u-1)b)^4(a+ub-(u-3)c)",
            "(-4u-3)/4*(a+(u-1)b)^4(a-ub+(u-3)c)",
            "(10u+5)/4*(a+(-u-2)/5*b+(-3u-1)/5*c)(b-(u-1)c)^4",
            "(2u-1)/4*(a-(u+2)b+(u-1)c)(a-uc)^4",
            "(-2u+1)/4*(a+(u+2)b-(u-1)c)(a+uc)^4",
            "(-4u-3)/4*(a-(u-1)b)^4(a+ub+(u-3)c)",
            "(4u+3)/4*(a+(u-1)b)^4(a-ub-(u-3)c)",
            "(-3u-1)/2*(b+uc)(b-(u-1)c)^4",
            "(3u+1)/2*(b-uc)(b+(u-1)c)^4",
        ],
    )
}

pub fn h3_cone<F: Field>(field: &F) -> Result<BihomForm<F::Elem>> {
    let pairs: Vec<_> = h3_cone_coefficients(field)?
        .into_iter()
        .zip(h3_sextics(field)?)
        .collect();
    BihomForm::from_pairs(field, &pairs, (5, 6))
}

/// `q_1, ..., q_12`, the quintics of the companion map of `H3`.
pub fn h3_companion<F: Field>(field: &F) -> Result<Vec<MultiPoly<F::Elem>>> {
    parse_list(
        field,
        3,
        Side::A,
        true,
        &[
            "a(b-(u-1)c)^4",
            "(b+uc)(b-(u-1)c)^4",
            "a(b+(u-1)c)^4",
            "(b-uc)(b+(u-1)c)^4",
            "b(a-uc)^4",
            "(a+(u-1)c)(a-uc)^4",
            "b(a+uc)^4",
            "(a-(u-1)c)(a+uc)^4",
            "c(a-(u-1)b)^4",
            "(a+ub)(a-(u-1)b)^4",
            "c(a+(u-1)b)^4",
            "(a-ub)(a+(u-1)b)^4",
        ],
    )
}

/// `(M_1 f_1, x f_1, M_2 f_2, x f_2, M_3 f_3, y f_3, ..., M_6 f_6, z f_6)`.
pub fn h3_bar_map<F: Field>(field: &F) -> Result<Vec<MultiPoly<F::Elem>>> {
    let m = h3_conjugate_lines(field)?;
    let f = h3_quintics(field)?;
    let mut out = Vec::with_capacity(12);
    for i in 0..6 {
        let v = MultiPoly::var(field, 3, i / 2);
        out.push(m[i].mul(field, &f[i])?);
        out.push(v.mul(field, &f[i])?);
    }
    Ok(out)
}

/// The unexpected sextic of `H3` written through the companion quintics:
/// `1/2 [ (3u+1)(M_1 f_1 q_1 - x f_1 q_2 - M_2 f_2 q_3 + x f_2 q_4) + ... ]`.
pub fn h3_cone_via_companion<F: Field>(field: &F) -> Result<BihomForm<F::Elem>> {
    let bar = h3_bar_map(field)?;
    let q = h3_companion(field)?;
    let u = field.golden_ratio()?;
    let three_u1 = field.add(&field.mul(&field.from_i64(3), &u), &field.one());
    let one_2u = field.sub(&field.one(), &field.mul(&field.from_i64(2), &u));
    let half = field.inv(&field.from_i64(2)).ok_or_else(|| Error::Invalid("characteristic 2".into()))?;
    let mut pairs = Vec::with_capacity(12);
    for (i, (g, h)) in bar.into_iter().zip(q).enumerate() {
        let group = [&three_u1, &one_2u, &three_u1][i / 4];
        let sign = if i % 4 == 0 || i % 4 == 3 { field.one() } else { field.from_i64(-1) };
        let c = field.mul(&field.mul(&half, group), &sign);
        pairs.push((h.scale(field, &c), g));
    }
    BihomForm::from_pairs(field, &pairs, (5, 6))
}

fn check_m(m: usize, min: usize) -> Result<()> {
    if m < min {
        return Err(Error::Invalid(format!("Fermat maps need m >= {min}, got {m}")));
    }
    Ok(())
}

/// `G_x = yz(y^m - (-z)^m)`, `G_y = zx(z^m - (-x)^m)`, `G_z = xy(x^m - (-y)^m)`.
pub fn fermat_binomials<F: Field>(field: &F, m: usize) -> Result<Vec<MultiPoly<F::Elem>>> {
    check_m(m, 1)?;
    let texts = [
        format!("yz(y^{m}-(-z)^{m})"),
        format!("zx(z^{m}-(-x)^{m})"),
        format!("xy(x^{m}-(-y)^{m})"),
    ];
    let refs: Vec<&str> = texts.iter().map(|s| s.as_str()).collect();
    parse_list(field, 3, Side::X, false, &refs)
}

/// The monomial part of `phi`: `xyz * mu_{m-1}` in the fixed monomial order.
fn fermat_monomials(m: usize) -> Vec<Mono> {
    let xyz = Mono::from_slice(&[1, 1, 1]);
    monomials(3, m - 1).iter().map(|mu| mu.mul(&xyz)).collect()
}

/// `phi = (xyz mu_{m-1} : G_x : G_y : G_z)`, `(m^2+m)/2 + 3` forms of degree `m+2`.
pub fn fermat_phi<F: Field>(field: &F, m: usize) -> Result<Vec<MultiPoly<F::Elem>>> {
    check_m(m, 2)?;
    let mut out: Vec<_> = fermat_monomials(m)
        .into_iter()
        .map(|mu| MultiPoly::monomial(field, mu, field.one()))
        .collect();
    out.extend(fermat_binomials(field, m)?);
    Ok(out)
}

/// `phi` without the coordinates in `(xyz)^2 mu_{m-4}`: `3m` forms.
pub fn fermat_phi_bar<F: Field>(field: &F, m: usize) -> Result<Vec<MultiPoly<F::Elem>>> {
    check_m(m, 4)?;
    let mut out: Vec<_> = fermat_monomials(m)
        .into_iter()
        .filter(|mu| mu.0.iter().any(|&e| e < 2))
        .map(|mu| MultiPoly::monomial(field, mu, field.one()))
        .collect();
    out.extend(fermat_binomials(field, m)?);
    Ok(out)
}

/// The companion map `psi` in `a, b, c`: `a^{m+1}, b^{m+1}, c^{m+1}`, the
/// mixed monomials `a^{m-i} b^{i+1}` (and likewise for `ac`, `bc`),
/// `i = 1..m-2`, then `a(b^m - (-c)^m), b(a^m - (-c)^m), c(b^m - (-a)^m)`.
pub fn fermat_psi<F: Field>(field: &F, m: usize) -> Result<Vec<MultiPoly<F::Elem>>> {
    check_m(m, 2)?;
    let mut texts = vec![format!("a^{}", m + 1), format!("b^{}", m + 1), format!("c^{}", m + 1)];
    for (s, t) in [("a", "b"), ("a", "c"), ("b", "c")] {
        for i in 1..=m - 2 {
            texts.push(format!("{s}^{}*{t}^{}", m - i, i + 1));
        }
    }
    texts.push(format!("a(b^{m}-(-c)^{m})"));
    texts.push(format!("b(a^{m}-(-c)^{m})"));
    texts.push(format!("c(b^{m}-(-a)^{m})"));
    let refs: Vec<&str> = texts.iter().map(|s| s.as_str()).collect();
    parse_list(field, 3, Side::A, false, &refs)
}

/// The cubic `C_m` in the coordinates `omega_0..omega_N` of `phi`'s target:
/// `G_x H_y H_z + H_x G_y H_z + H_x H_y G_z - G_x G_y G_z`, plus
/// `2 H_x H_y H_z` for odd `m`, with `H_x = x^m yz` etc., as printed.
///
/// For even `m` this does not vanish on the image; see [`fermat_cubic_corrected`].
pub fn fermat_cubic<F: Field>(field: &F, m: usize) -> Result<MultiPoly<F::Elem>> {
    fermat_cubic_with(field, m, -1)
}

/// `(1 - (-1)^m) H_x H_y H_z + G_x H_y H_z + H_x G_y H_z + H_x H_y G_z
/// + (-1)^{m+1} G_x G_y G_z`: agrees with [`fermat_cubic`] for odd `m` and
/// flips the sign of `G_x G_y G_z` for even `m`.
pub fn fermat_cubic_corrected<F: Field>(field: &F, m: usize) -> Result<MultiPoly<F::Elem>> {
    fermat_cubic_with(field, m, if m % 2 == 1 { -1 } else { 1 })
}

fn fermat_cubic_with<F: Field>(field: &F, m: usize, ggg_sign: i64) -> Result<MultiPoly<F::Elem>> {
    check_m(m, 2)?;
    let monos = fermat_monomials(m);
    let n = monos.len() + 3;
    let h_index = |i: usize| {
        let mut e = [1u16; 3];
        e[i] = m as u16;
        monos.iter().position(|mu| mu.0.as_slice() == e).expect("H monomial")
    };
    let (hx, hy, hz) = (h_index(0), h_index(1), h_index(2));
    let (gx, gy, gz) = (n - 3, n - 2, n - 1);
    let cube = |i: usize, j: usize, k: usize| {
        let mut e = vec![0u16; n];
        e[i] += 1;
        e[j] += 1;
        e[k] += 1;
        Mono::from_slice(&e)
    };
    let mut terms = vec![
        (cube(gx, hy, hz), field.one()),
        (cube(hx, gy, hz), field.one()),
        (cube(hx, hy, gz), field.one()),
        (cube(gx, gy, gz), field.from_i64(ggg_sign)),
    ];
    if m % 2 == 1 {
        terms.push((cube(hx, hy, hz), field.from_i64(2)));
    }
    Ok(MultiPoly::from_terms(field, n, terms))
}

/// The printed expansion of the unexpected curves `C_{R,m}`, bidegree
/// `(m+1, m+2)` in `((a:b:c), (x:y:z))`, transcribed literally.
///
/// As printed it does not have multiplicity `m+1` at `x = a`; see
/// [`fermat_cone_corrected`].
pub fn fermat_cone<F: Field>(field: &F, m: usize) -> Result<BihomForm<F::Elem>> {
    let sign = if (m + 1) % 2 == 0 { "+" } else { "-" };
    let block = format!(
        "{}*(a(b^{m}{sign}c^{m})x^{e}+b(a^{m}{sign}c^{m})y^{e}+c(a^{m}{sign}b^{m})z^{e})",
        m + 1,
        e = m - 1
    );
    fermat_cone_with(field, m, block, 1)
}

/// The same expansion with the signs that make it the unexpected curve: the
/// `(m+1)`-block is `(-1)^m (m+1) (a(b^m-(-c)^m)x^{m-1} + b(c^m-(-a)^m)y^{m-1}
/// + c(a^m-(-b)^m)z^{m-1})` and the `a^{m-i}c^{i+1}` terms carry an extra
/// `(-1)^{m+1}`.
pub fn fermat_cone_corrected<F: Field>(field: &F, m: usize) -> Result<BihomForm<F::Elem>> {
    let block = format!(
        "({})*(a(b^{m}-(-c)^{m})x^{e}+b(c^{m}-(-a)^{m})y^{e}+c(a^{m}-(-b)^{m})z^{e})",
        if m % 2 == 0 { m as i64 + 1 } else { -(m as i64 + 1) },
        e = m - 1
    );
    fermat_cone_with(field, m, block, if m % 2 == 0 { -1 } else { 1 })
}

fn fermat_cone_with<F: Field>(field: &F, m: usize, block: String, ac_sign: i64) -> Result<BihomForm<F::Elem>> {
    check_m(m, 2)?;
    let mut inner = vec![block];
    for i in 1..=m - 2 {
        let coeff = binomial(m + 1, i + 1) as i64 * if i % 2 == 1 { 1 } else { -1 };
        let (p, q, r) = (m - i, i + 1, m - i - 1);
        inner.push(format!(
            "({coeff})*(a^{p}b^{q}x^{i}y^{r}+b^{p}c^{q}y^{i}z^{r})+({})*a^{p}c^{q}x^{i}z^{r}",
            coeff * ac_sign
        ));
    }
    let text = format!(
        "xyz*({})+a^{k}*yz(y^{m}-(-z)^{m})+b^{k}*zx(z^{m}-(-x)^{m})+c^{k}*xy(x^{m}-(-y)^{m})",
        inner.join("+"),
        k = m + 1
    );
    BihomForm::parse(field, &text, 3, (m + 1, m + 2), &[])
}
