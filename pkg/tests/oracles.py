"""Reference values computed once with mpmath at 50 significant digits.

Stored as decimal strings (30 digits); tests convert with ``float``.
"""

# (x, Gamma(x))
GAMMA = [
    (3.7, '4.17065178379660403008698494469'),
    (0.5, '1.77245385090551602729816748334'),
    (5.0, '24.0'),
    (-2.5, '-0.945308720482941881225689324449'),
    (10.3, '7.16430689062376406625383355584e+5'),
    (0.01, '99.4325851191506016320669886977'),
]

# (alpha, x, j_alpha(x))
NORMALIZED_J = [
    (1.0, 2.5, '0.397675281971419230408653021012'),
    (0.0, 1.0, '0.765197686557966551449717526103'),
    (2.5, 7.0, '-0.0411019196307553658230741115334'),
    (1.0, 11.5, '-0.0397180209852736477590160835615'),
    (1.0, 12.5, '-0.0264774087383615549534019613479'),
    (1.0, 15.0, '0.0273472051484697014862849882769'),
    (1.0, 25.0, '-0.0100280199664231923721447416846'),
    (-0.3, 4.0, '-0.550478566856304493842282064983'),
    (3.0, 40.0, '-9.46086116293656023736959113493e-5'),
    (0.5, 100.0, '-0.0050636564110975879365655761046'),
    (1.5, 3000.0, '3.25251754403503806209634055418e-7'),
    (0.25, 1800.0, '-0.000800250026830619563081715701711'),
    (4.0, 2500.0, '1.26607159061972248986271916159e-14'),
]

# (alpha, x, J_alpha(x))
BESSEL_J = [
    (0.0, 1.0, '0.765197686557966551449717526103'),
    (1.7, 3.3, '0.453332962948240348041896445398'),
    (2.0, 10.0, '0.254630313685120622531710616091'),
    (0.5, 0.01, '0.0797871262793342204851286470146'),
    (3.5, 50.0, '0.111780594939280588432555895338'),
]

# (alpha, x, Y_alpha(x))
BESSEL_Y = [
    (1.3, 2.0, '-0.289443395478403627790702462033'),
    (2.0, 5.0, '0.367662882605524517994069254407'),
    (0.0, 1.0, '0.0882569642156769579829267660235'),
    (0.25, 0.5, '-0.756843545694495991562030282459'),
    (1.5, 30.0, '0.14318064368377218830830765531'),
]

# (alpha, x, I_alpha(x))
MODIFIED_I = [
    (0.0, 0.0, '1.0'),
    (2.0, 3.0, '2.24521244092995115462547838563'),
    (-0.5, 2.0, '2.12259162017763719381612029573'),
    (1.5, 0.2, '0.0238836108689015149162707435385'),
    (0.3, 10.0, '2802.36248897445846482383818207'),
]

# (alpha, x, K_alpha(x))
MODIFIED_K = [
    (0.5, 1.0, '0.461068504447894558439575873876'),
    (1.5, 2.0, '0.179906657952092171052054752455'),
    (0.0, 1.0, '0.421024438240708333335627379213'),
    (1.0, 0.05, '19.909674325882505396835481885'),
    (3.0, 10.0, '2.7252700256598692089082683892e-5'),
    (2.5, 30.0, '2.36249878110479924389213502581e-14'),
    (0.2, 0.01, '5.61467097496390650158732644577'),
    (4.0, 0.5, '752.24509791040394607142480552'),
]

# (alpha, x, x^alpha K_alpha(x))
SCALED_K = [
    (1.0, 0.0, '1.0'),
    (1.0, 0.1, '0.985384478087060612137560702879'),
    (2.0, 3.0, '0.553594126245678338911380643076'),
    (0.5, 1.0, '0.461068504447894558439575873876'),
    (0.7, 0.01, '1.05235165627863049884707215793'),
    (2.5, 0.2, '3.73510165205486649127841866816'),
    (1.0, 0.0001, '0.999999950868640495725320279931'),
]

# (a, b, z, 1F1(a; b; z))
KUMMER_1F1 = [
    (2.0, 1.5, -0.25, '0.712218191751011147967021176245'),
    (1.0, 2.0, 1.0, '1.71828182845904523536028747135'),
    (1.25, 1.5, -10.0, '0.0154497980931364386675258048051'),
    (0.5, 3.0, 5.0, '4.38211860431445329763757243094'),
    (1.5, 1.5, -40.0, '4.24835425529158899532923478286e-18'),
]

K0_AT_1 = '0.421024438240708333335627379213'
# transform of (t^2+1)^(-5/2) at alpha=0.5, xi=2 by direct 50-digit quadrature
EXAMPLE1_TRANSFORM = '0.0743978851229876457361208830828'
# transform of t^(1/2) exp(-t^2) at alpha=0.5, xi=1 by direct 50-digit quadrature
EXAMPLE2_TRANSFORM = '0.273186170605827296404942137304'
# root of K_1(sqrt x) = 1
X0_ALPHA1 = '0.524299523948600186096203635406'
# d/dx K_1(sqrt x) at x = 4
DK1_SQRT_AT_4 = '-0.0459567034144486623237547446125'
# K_(1/2)(2) / (2 K_(3/2)(2))
ISMAIL_LHS_15_4 = '0.333333333333333333333333333333'
