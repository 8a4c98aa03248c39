//! Convergent power series for Ai near the origin and around tabulated anchors.

use crate::scalar::Scalar;

/// `Ai(0)`.
pub const AI0: f64 = 0.355_028_053_887_817_24;
/// `-Ai'(0)`.
pub const NEG_AI_PRIME0: f64 = 0.258_819_403_792_806_8;

/// Anchor spacing of [`ANCHORS`].
pub(crate) const ANCHOR_STEP: f64 = 0.5;

/// `(x0, Ai(x0), Ai'(x0))` for `x0 = -8.5, -8.0, ..., 8.5`, correctly rounded.
pub(crate) const ANCHORS: [(f64, f64, f64); 35] = [
    (-8.5, -0.330_290_237_630_208_9, -0.032_313_348_284_639_136),
    (-8.0, -0.052_705_050_356_386_203, 0.935_560_938_198_306_6),
    (-7.5, 0.321_775_716_380_647_9, 0.318_809_506_698_554_6),
    (-7.0, 0.184_280_835_250_505_64, -0.771_008_168_410_126_6),
    (-6.5, -0.238_020_301_997_115_8, -0.674_952_492_513_202_2),
    (-6.0, -0.329_145_173_629_823_1, 0.345_935_487_281_342_9),
    (-5.5, 0.017_781_541_276_574_976, 0.864_197_217_771_398_4),
    (-5.0, 0.350_761_009_024_114_3, 0.327_192_818_554_443_14),
    (-4.5, 0.292_152_781_055_959_47, -0.523_362_532_315_747_7),
    (-4.0, -0.070_265_532_949_289_515, -0.790_628_575_368_581_4),
    (-3.5, -0.375_533_823_140_431_9, -0.343_443_433_454_048_15),
    (-3.0, -0.378_814_293_677_658_07, 0.314_583_769_216_598_8),
    (-2.5, -0.112_325_067_692_966_09, 0.678_852_734_264_794_4),
    (-2.0, 0.227_407_428_201_685_58, 0.618_259_020_741_691),
    (-1.5, 0.464_256_577_748_869_4, 0.309_186_967_202_410_4),
    (-1.0, 0.535_560_883_292_352_1, -0.010_160_567_116_645_209),
    (-0.5, 0.475_728_091_610_539_6, -0.204_081_670_339_547_4),
    (0.0, 0.355_028_053_887_817_24, -0.258_819_403_792_806_8),
    (0.5, 0.231_693_606_480_833_5, -0.224_910_532_664_683_9),
    (1.0, 0.135_292_416_312_881_42, -0.159_147_441_296_793_2),
    (1.5, 0.071_749_497_008_105_41, -0.097_382_012_842_301_32),
    (2.0, 0.034_924_130_423_274_38, -0.053_090_384_433_653_63),
    (2.5, 0.015_725_923_380_470_49, -0.026_250_881_035_903_23),
    (3.0, 0.006_591_139_357_460_719, -0.011_912_976_705_951_318),
    (3.5, 0.002_584_098_786_989_635, -0.005_004_413_967_952_583),
    (4.0, 0.000_951_563_851_204_801_9, -0.001_958_640_950_204_179),
    (4.5, 0.000_330_250_323_514_309, -0.000_717_866_567_557_508_9),
    (5.0, 0.000_108_344_428_136_074_42, -0.000_247_413_890_868_462_5),
    (5.5, 3.368_531_190_859_981_4e-5, -8.046_339_130_556_514e-5),
    (6.0, 9.947_694_360_252_89e-6, -2.476_520_039_703_495_5e-5),
    (6.5, 2.795_882_343_204_913_6e-6, -7.231_931_466_601_793e-6),
    (7.0, 7.492_128_863_997_167e-7, -2.008_150_894_738_792e-6),
    (7.5, 1.917_256_067_513_430_8e-7, -5.312_713_959_720_545e-7),
    (8.0, 4.692_207_616_099_231_6e-8, -1.341_439_297_906_786_6e-7),
    (8.5, 1.099_700_975_519_550_7e-8, -3.237_725_440_447_602_3e-8),
];

/// Maclaurin series `Ai = c1·f − c2·g` with the two solutions of `y'' = xy`
/// normalised by `f(0) = 1, g'(0) = 1`.
pub(crate) fn maclaurin<T: Scalar>(x: T) -> (T, T) {
    let eps = T::lit(T::EPS * 0.25);
    let x3 = x * x * x;
    let mut f = T::one();
    let mut g = x;
    let mut fp = T::zero();
    let mut gp = T::one();
    let mut tf = T::one();
    let mut tg = x;
    // f' and g' terms are tf·x²/(3k−1) and tg·x²/(3k) before the update.
    for k in 1..200 {
        let kk = T::from_count(3 * k);
        let tfp = tf * x * x / (kk - T::one());
        let tgp = tg * x * x / kk;
        tf = tf * x3 / (kk * (kk - T::one()));
        tg = tg * x3 / ((kk + T::one()) * kk);
        f = f + tf;
        g = g + tg;
        fp = fp + tfp;
        gp = gp + tgp;
        let small = |t: T, s: T| t.abs() <= eps * s.abs();
        if small(tf, f) && small(tg, g) && small(tfp, fp) && small(tgp, gp) {
            break;
        }
    }
    let c1 = T::lit(AI0);
    let c2 = T::lit(NEG_AI_PRIME0);
    (c1 * f - c2 * g, c1 * fp - c2 * gp)
}

/// Taylor expansion of the Airy ODE around the nearest anchor; `|x| ≤ 8.5`.
pub(crate) fn anchored_taylor<T: Scalar>(x: T) -> (T, T) {
    let (lo, _, _) = ANCHORS[0];
    let idx = ((x.as_f64() - lo) / ANCHOR_STEP).round() as usize;
    taylor_about(ANCHORS[idx.min(ANCHORS.len() - 1)], x)
}

fn taylor_about<T: Scalar>(anchor: (f64, f64, f64), x: T) -> (T, T) {
    let (x0, a0, a1) = anchor;
    let x0 = T::lit(x0);
    let h = x - x0;
    let eps = T::lit(T::EPS * 0.25);

    // a_{k+2} = (x0·a_k + a_{k−1}) / ((k+1)(k+2)).
    let mut prev = T::zero();
    let mut a = [T::lit(a0), T::lit(a1)];
    let mut hk = T::one();
    let mut val = a[0] + a[1] * h;
    let mut der = a[1];
    let scale = a[0].abs() + a[1].abs() * h.abs();
    let mut quiet = 0;
    for k in 0..80 {
        let next = (x0 * a[0] + prev) / T::from_count((k + 1) * (k + 2));
        prev = a[0];
        a = [a[1], next];
        // a[1] is now a_{k+2}; hk tracks h^{k+1}.
        hk = hk * h;
        let term = a[1] * hk * h;
        val = val + term;
        der = der + a[1] * hk * T::from_count(k + 2);
        if term.abs() <= eps * (val.abs() + scale) {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    (val, der)
}
