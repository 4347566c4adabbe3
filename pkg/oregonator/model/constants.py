"""Closed-form constants of the a-priori estimates for the Oregonator semiflow

Every function evaluates a printed bound literally so that the numbers can be compared against
trajectories. The few constants whose value is only asserted to exist (K_2, K(n), the Lipschitz
constant of the reaction on an E-ball) are given constructive definitions documented with each function.
"""
from dataclasses import dataclass, asdict
from math import exp, floor, sqrt
import logging

from oregonator.model.params import OregonatorParams, DomainSpec, EmbeddingConstants, validate_params

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NormQuotientRate:
    """Growth-rate constant N(R) of the norm quotient as a function of the L^4 radius R

    Evaluates as ``linear + R * quadratic``, where the linear group is
    ``4 gamma S`` as printed (literal) or ``4 S / gamma`` (corrected), with
    ``S = a1^2 + b1^2 + b2^2 + c2^2 + a3^2 + c3^2``.
    """

    linear_sum: float = ...
    """The sum of squared linear rates, S"""
    gamma: float = ...
    """Poincare constant of the domain"""
    quadratic: float = ...
    """Coefficient of R: 16 F^2 eta^2 + 8 (G1^2 + G2^2) eta^2"""

    def literal(self, R: float) -> float:
        """N(R) with the linear group multiplied by gamma"""
        return 4 * self.gamma * self.linear_sum + R * self.quadratic

    def corrected(self, R: float) -> float:
        """N(R) with the linear group divided by gamma, as the step ||y||^2 <= ||grad y||^2 / gamma requires"""
        return 4 * self.linear_sum / self.gamma + R * self.quadratic

    def __call__(self, R: float, corrected: bool = True) -> float:
        return self.corrected(R) if corrected else self.literal(R)


@dataclass(frozen=True)
class DerivedConstants:
    """All constants of the absorbing, regularity and dimension estimates"""

    d0: float = ...
    """Smallest diffusion coefficient"""
    M1: float = ...
    """Coefficient of the u^2 term after Young's inequality in the L^2 estimate"""
    M2: float = ...
    """Weight of ||w||^2 in the rescaled L^2 energy"""
    M3: float = ...
    """Coefficient of the u^6 term in the L^6 estimate"""
    M4: float = ...
    """Weight of ||w||_6^6 in the rescaled L^6 energy"""
    M5: float = ...
    """Bound on the time integral of the gradient energy over unit windows"""
    K1: float = ...
    """Radius (squared H-norm) of the absorbing ball B_0"""
    K2: float = ...
    """Asymptotic bound on the L^4 energy, sqrt(K1 K3)"""
    K3: float = ...
    """Asymptotic bound on the L^6 energy"""
    K_E: float = ...
    """Radius (squared E-norm) of the absorbing ball B_1"""
    K_n: float = ...
    """Young-inequality constant K(n) of the trace estimate"""
    N_of_R: NormQuotientRate = ...
    """Growth constant of the norm quotient as a function of the L^4 radius"""
    dim_threshold: float = ...
    """Right-hand side of the two-sided condition on the dimension bound"""
    dim_bound_m: int = ...
    """Smallest integer m for which the trace estimate certifies q_m < 0"""
    linf_bound: float = ...
    """Bound on the sup-norm of points on the global attractor"""
    gamma: float = ...
    """Poincare constant of the domain"""
    volume: float = ...
    """Measure of the domain"""
    eta: float = 1.
    """Embedding constant the E-ball estimates were evaluated with"""
    corrected: bool = True
    """Whether rho and the Lipschitz constant use the corrected N(R)"""

    def rho(self, R: float) -> float:
        """Growth rate of the norm quotient, N(R) / d0, for an L^4 radius R"""
        return self.N_of_R(R, corrected=self.corrected) / self.d0

    def lipschitz(self, r: float) -> float:
        """Lipschitz constant of the reaction map on the E-ball of radius r"""
        return lipschitz_on_ball(self.N_of_R, r, self.eta)

    def table(self) -> list[dict[str, object]]:
        """Rows of (name, value, formula) describing each scalar constant"""
        output = []
        for name, value in asdict(self).items():
            if name in _FORMULAS:
                output.append({'name': name, 'value': value, 'formula': _FORMULAS[name]})
        output.append({'name': 'N_literal(K2^(1/2))', 'value': self.N_of_R.literal(sqrt(self.K2)), 'formula': _FORMULAS['N_literal']})
        output.append({'name': 'N_corrected(K2^(1/2))', 'value': self.N_of_R.corrected(sqrt(self.K2)), 'formula': _FORMULAS['N_corrected']})
        output.append({'name': 'rho(K2^(1/2))', 'value': self.rho(sqrt(self.K2)), 'formula': _FORMULAS['rho']})
        return output


_FORMULAS = {
    'd0': 'min(d1, d2, d3)',
    'M1': 'a1 + (b1^2 + (a3 c2 / c3)^2) / (2 b2)',
    'M2': 'c2^2 / (b2 c3)',
    'M3': 'a1 + 5 b1^(6/5) / (6 b2^(1/5)) + (a3 c2 / c3)^6 / (6 b2^5)',
    'M4': 'c2^6 / (b2^5 c3)',
    'M5': '(K1 max(1, M2) + M1^3 |Omega| / F^2) / d0',
    'K1': 'M1^3 |Omega| / (gamma d0 F^2 min(1, M2))',
    'K2': '(K1 K3)^(1/2)',
    'K3': 'M3^7 |Omega| / (gamma d0 F^6 min(1, M4))',
    'K_E': '(M5 + K1 h) / min(1, M2) * exp(eta^4 M5 (G1^2 / 2d1 + G2^2 / 2d2)), h = 2(a1^2 + b1^2)/d1 + a3^2 c2^2 / (2 d3 b2 c3)',
    'K_n': 'max_s [(G1 + G2) K1^(1/2) C^2 s^(n/2) - d0 s^2 / 2]',
    'dim_threshold': '(2 (K(n) + a1 + b1 + c2 + a3) / (d0 Psi))^(n/2) |Omega|',
    'dim_bound_m': 'm - 1 <= threshold < m',
    'linf_bound': 'C(2) (K1^(1/2) + 4 K_E^(1/2) L(K_E^(1/2))), L(r) = N_corrected(eta^2 r^2)^(1/2)',
    'gamma': 'pi^2 sum_i 1 / L_i^2',
    'volume': 'prod_i L_i',
    'N_literal': '4 gamma S + 16 R F^2 eta^2 + 8 R (G1^2 + G2^2) eta^2',
    'N_corrected': '4 S / gamma + 16 R F^2 eta^2 + 8 R (G1^2 + G2^2) eta^2',
    'rho': 'N(R) / d0',
}


def compute_M1(p: OregonatorParams) -> float:
    return p.a1 + (p.b1 ** 2 + (p.a3 * p.c2 / p.c3) ** 2) / (2 * p.b2)


def compute_M3(p: OregonatorParams) -> float:
    return p.a1 + 5 * p.b1 ** (6 / 5) / (6 * p.b2 ** (1 / 5)) + (p.a3 * p.c2 / p.c3) ** 6 / (6 * p.b2 ** 5)


def compute_M4(p: OregonatorParams) -> float:
    return p.c2 ** 6 / (p.b2 ** 5 * p.c3)


def l2_asymptote(p: OregonatorParams, dom: DomainSpec) -> float:
    """Additive constant of the L^2 Gronwall envelope, M1^3 |Omega| / (3 gamma d0 F^2)"""
    return compute_M1(p) ** 3 * dom.volume / (3 * dom.gamma * p.d0 * p.F ** 2)


def l6_decay_rate(p: OregonatorParams, dom: DomainSpec, corrected: bool = True) -> float:
    """Decay rate of the L^6 Gronwall envelope: 10 gamma d0 as printed, or 10 gamma d0 / 3 when corrected"""
    rate = 10 * dom.gamma * p.d0
    return rate / 3 if corrected else rate


def l6_asymptote(p: OregonatorParams, dom: DomainSpec, corrected: bool = True) -> float:
    """Additive constant of the L^6 Gronwall envelope, M3^7 |Omega| / (rate F^6 min(1, M4))"""
    return compute_M3(p) ** 7 * dom.volume / (l6_decay_rate(p, dom, corrected) * p.F ** 6 * min(1., compute_M4(p)))


def gradient_forcing(p: OregonatorParams) -> float:
    """Coefficient of K1 in the forcing of the gradient inequality, 2(a1^2 + b1^2)/d1 + a3^2 c2^2 / (2 d3 b2 c3)"""
    return 2 * (p.a1 ** 2 + p.b1 ** 2) / p.d1 + p.a3 ** 2 * p.c2 ** 2 / (2 * p.d3 * p.b2 * p.c3)


def gradient_growth_coefficient(p: OregonatorParams) -> float:
    """Coefficient G1^2 / (2 d1) + G2^2 / (2 d2) multiplying eta^4 beta in the gradient inequality"""
    return p.G1 ** 2 / (2 * p.d1) + p.G2 ** 2 / (2 * p.d2)


def young_constant(amplitude: float, d0: float, n: int) -> float:
    """Sharp constant K in ``A s^(n/2) <= d0 s^2 / 2 + K`` for all s >= 0

    The maximizer of ``A s^(n/2) - d0 s^2 / 2`` solves ``A (n/2) s^(n/2 - 1) = d0 s``,
    giving ``s* = (A n / (2 d0))^(2 / (4 - n))``.

    Args:
        amplitude: Coefficient A
        d0: Smallest diffusion coefficient
        n: Spatial dimension, less than 4
    Returns:
        Value of the maximum
    """
    s_star = (amplitude * n / (2 * d0)) ** (2 / (4 - n))
    return amplitude * s_star ** (n / 2) - d0 * s_star ** 2 / 2


def dimension_threshold(p: OregonatorParams, dom: DomainSpec, K_n: float, lt_Psi: float) -> float:
    """Quantity T such that the dimension bound m satisfies m - 1 <= T < m"""
    return (2 * (K_n + p.a1 + p.b1 + p.c2 + p.a3) / (p.d0 * lt_Psi)) ** (dom.n / 2) * dom.volume


def lipschitz_on_ball(rate: NormQuotientRate, r: float, eta: float) -> float:
    """Lipschitz constant of f on the E-ball of radius r, sqrt(N_corrected(eta^2 r^2))

    An E-ball of radius r lies in the L^4 ball of squared radius eta^2 r^2, and N(R) bounds
    ||f(g1) - f(g2)||^2 / ||grad(g1 - g2)||^2 on that ball.
    """
    return sqrt(rate.corrected(eta ** 2 * r ** 2))


def derive_constants(p: OregonatorParams, dom: DomainSpec, emb: EmbeddingConstants) -> DerivedConstants:
    """Evaluate every constant of the estimates

    Args:
        p: Rate constants
        dom: Domain
        emb: Embedding constants
    Returns:
        The derived constants
    """
    validate_params(p)

    gamma = dom.gamma
    volume = dom.volume
    d0 = p.d0

    # Absorbing ball in H
    M1 = compute_M1(p)
    M2 = p.M2
    K1 = M1 ** 3 * volume / (gamma * d0 * p.F ** 2 * min(1., M2))

    # Absorbing bound in L^6, and the interpolated L^4 bound
    M3 = compute_M3(p)
    M4 = compute_M4(p)
    K3 = M3 ** 7 * volume / (gamma * d0 * p.F ** 6 * min(1., M4))
    K2 = sqrt(K1 * K3)

    # Absorbing ball in E from the uniform Gronwall inequality
    M5 = (K1 * max(1., M2) + M1 ** 3 * volume / p.F ** 2) / d0
    K_E = (M5 + K1 * gradient_forcing(p)) / min(1., M2) * exp(emb.eta ** 4 * M5 * gradient_growth_coefficient(p))

    # Dimension bound from the trace estimate
    K_n = young_constant((p.G1 + p.G2) * sqrt(K1) * emb.gn_C ** 2, d0, dom.n)
    threshold = dimension_threshold(p, dom, K_n, emb.lt_Psi)
    dim_bound_m = floor(threshold) + 1

    # Growth of the norm quotient and the sup-norm bound
    rate = NormQuotientRate(
        linear_sum=p.a1 ** 2 + p.b1 ** 2 + p.b2 ** 2 + p.c2 ** 2 + p.a3 ** 2 + p.c3 ** 2,
        gamma=gamma,
        quadratic=16 * p.F ** 2 * emb.eta ** 2 + 8 * (p.G1 ** 2 + p.G2 ** 2) * emb.eta ** 2
    )
    lipschitz = lipschitz_on_ball(rate, sqrt(K_E), emb.eta)
    linf_bound = emb.reg_C2 * (sqrt(K1) + 4 * sqrt(K_E) * lipschitz)

    output = DerivedConstants(
        d0=d0, M1=M1, M2=M2, M3=M3, M4=M4, M5=M5,
        K1=K1, K2=K2, K3=K3, K_E=K_E, K_n=K_n,
        N_of_R=rate, dim_threshold=threshold, dim_bound_m=dim_bound_m,
        linf_bound=linf_bound, gamma=gamma, volume=volume,
        eta=emb.eta, corrected=emb.corrected_poincare_direction
    )
    logger.debug(f'Derived constants: K1={K1:.4g}, K3={K3:.4g}, K_E={K_E:.4g}, m={dim_bound_m}')
    return output
