//! Nodes and weights of the 61-point Gauss-Kronrod rule on [-1, 1].
//!
//! The embedded 30-point Gauss rule provides the error estimate. Constants
//! carry 22 significant digits; `tests` certify polynomial exactness up to
//! degree 91 and that the weights sum to 2.

#![allow(clippy::excessive_precision)]

// ascending nonnegative Kronrod abscissae; index 0 is the centre,
// odd indices are the embedded 30-point Gauss-Legendre nodes
pub(crate) const XGK61: [f64; 31] = [
    0.0,
    0.05147184255531769583303,
    0.1028069379667370301471,
    0.1538699136085835469638,
    0.204525116682309891439,
    0.2546369261678898464398,
    0.3040732022736250773727,
    0.352704725530878113471,
    0.4004012548303943925355,
    0.4470337695380891767806,
    0.4924804678617785749937,
    0.5366241481420198992642,
    0.579345235826361691756,
    0.6205261829892428611405,
    0.6600610641266269613701,
    0.6978504947933157969323,
    0.7337900624532268047262,
    0.767777432104826194918,
    0.7997278358218390830137,
    0.8295657623827683974429,
    0.8572052335460610989587,
    0.8825605357920526815431,
    0.9055733076999077985465,
    0.9262000474292743258793,
    0.9443744447485599794158,
    0.9600218649683075122169,
    0.9731163225011262683747,
    0.98366812327974720997,
    0.9916309968704045948586,
    0.9968934840746495402716,
    0.9994844100504906375713,
];
pub(crate) const WGK61: [f64; 31] = [
    0.05149472942945156755834,
    0.05142612853745902593386,
    0.05122154784925877217066,
    0.0508817958987496064923,
    0.05040592140278234684089,
    0.04979568342707420635781,
    0.04905543455502977888753,
    0.04818586175708712914078,
    0.04718554656929915394526,
    0.04605923827100698811627,
    0.04481480013316266319236,
    0.04345253970135606931683,
    0.04196981021516424614715,
    0.040374538951535959112,
    0.03867894562472759295035,
    0.03688236465182122922391,
    0.0349793380280600241375,
    0.03298144705748372603181,
    0.03090725756238776247288,
    0.02875404876504129284398,
    0.0265099548823331016106,
    0.02419116207808060136569,
    0.02182803582160919229717,
    0.01941414119394238117341,
    0.01692088918905327262757,
    0.01436972950704580481245,
    0.01182301525349634174223,
    0.009273279659517763428441,
    0.00663070391593129217332,
    0.003890461127099884051267,
    0.001389013698677007624552,
];
// Gauss weights aligned with odd indices of XGK61
pub(crate) const WG30: [f64; 15] = [
    0.1028526528935588403413,
    0.1017623897484055045964,
    0.09959342058679526706278,
    0.09636873717464425963947,
    0.09212252223778612871763,
    0.08689978720108297980239,
    0.08075589522942021535469,
    0.07375597473770520626824,
    0.06597422988218049512813,
    0.05749315621761906648172,
    0.04840267283059405290294,
    0.0387991925696270495968,
    0.02878470788332336934972,
    0.0184664683110909591423,
    0.007968192496166605615466,
];
