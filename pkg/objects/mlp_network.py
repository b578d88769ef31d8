from dataclasses import dataclass
from typing import List

import numpy as np

from policies.activation.activation_policy import ActivationPolicy
from policies.activation.identity import IdentityActivationPolicy
from policies.activation.relu import ReluActivationPolicy
from policies.activation.sigmoid import SigmoidActivationPolicy
from policies.activation.tanh import TanhActivationPolicy
from utils.errors import ShapeError

ACTIVATION_POLICIES_MAP = {
    'sigmoid': SigmoidActivationPolicy(),
    'relu': ReluActivationPolicy(),
    'tanh': TanhActivationPolicy(),
    'identity': IdentityActivationPolicy(),
}
OUTPUT_ACTIVATION = IdentityActivationPolicy()


@dataclass(frozen=True)
class ForwardTrace:
    """Pre-activations and activations of every layer for one batch. activations[0] is the input"""

    pre_activations: List[np.ndarray]
    activations: List[np.ndarray]

    @property
    def output(self) -> np.ndarray:
        return self.activations[-1]


@dataclass(frozen=True)
class NetworkGradients:
    """Gradients of an objective with respect to every weight matrix and bias vector"""

    weights: List[np.ndarray]
    biases: List[np.ndarray]

    def parameters(self) -> List[np.ndarray]:
        """Flat list (dW_1, db_1, dW_2, db_2, ...), aligned with MlpNetwork.parameters"""

        return [p for pair in zip(self.weights, self.biases) for p in pair]


@dataclass(frozen=True)
class MlpNetwork:
    """
    Feedforward network h_k = s(W_k h_(k-1) + b_k) with a linear output layer.
    Samples are columns: the input is d x B and the output o x B. Instances are never mutated.
    """

    layer_widths: List[int]
    weights: List[np.ndarray]
    biases: List[np.ndarray]
    activation: str = 'sigmoid'

    def __post_init__(self):
        """Validates the shapes of the parameters against the layer widths"""

        if len(self.layer_widths) < 2 or any(w < 1 for w in self.layer_widths):
            raise ShapeError(f'Layer widths must have at least 2 entries >= 1, got {self.layer_widths}')

        if self.activation not in ACTIVATION_POLICIES_MAP:
            raise ValueError(f'Unknown activation {self.activation}. Options: {list(ACTIVATION_POLICIES_MAP)}')

        if len(self.weights) != self.depth or len(self.biases) != self.depth:
            raise ShapeError(f'Expected {self.depth} weight matrices and bias vectors')

        for k, (w, b) in enumerate(zip(self.weights, self.biases)):
            expected = (self.layer_widths[k + 1], self.layer_widths[k])
            if w.shape != expected or b.shape != (expected[0],):
                raise ShapeError(f'Layer {k} | got W {w.shape} and b {b.shape}, expected W {expected}')

            if not (np.all(np.isfinite(w)) and np.all(np.isfinite(b))):
                raise ShapeError(f'Layer {k} | parameters are not finite')

    @property
    def depth(self) -> int:
        return len(self.layer_widths) - 1

    @property
    def input_width(self) -> int:
        return self.layer_widths[0]

    @property
    def output_width(self) -> int:
        return self.layer_widths[-1]

    def _activation(self, k: int) -> ActivationPolicy:
        """Activation of layer k: the hidden activation, or the identity for the output layer"""

        return OUTPUT_ACTIVATION if k == self.depth - 1 else ACTIVATION_POLICIES_MAP[self.activation]

    def forward(self, x: np.ndarray) -> ForwardTrace:
        """Passes a batch through every layer, keeping the trace needed by backward"""

        x = np.asarray(x, dtype=np.float64)
        if x.ndim != 2 or x.shape[0] != self.input_width:
            raise ShapeError(f'Input must have {self.input_width} rows, got shape {x.shape}')

        pre_activations, activations = [], [x]
        for k, (w, b) in enumerate(zip(self.weights, self.biases)):
            z = w @ activations[-1] + b[:, None]
            pre_activations.append(z)
            activations.append(self._activation(k).execute(z))

        return ForwardTrace(pre_activations=pre_activations, activations=activations)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return self.forward(x).output

    def backward(
            self,
            trace: ForwardTrace,
            output_grad: np.ndarray,
            l1: float = 0.0,
            l2: float = 0.0
    ) -> NetworkGradients:
        """
        Back-propagates the gradient of an objective with respect to the output.
        The penalty l1 * sum|W| + l2 * sum W^2 is added to every weight matrix gradient
        """

        if len(trace.activations) != self.depth + 1 or trace.activations[0].shape[0] != self.input_width:
            raise ShapeError('Trace was not produced by this network')

        if output_grad.shape != trace.output.shape:
            raise ShapeError(f'Output gradient shape {output_grad.shape} does not match {trace.output.shape}')

        weight_grads, bias_grads = [None] * self.depth, [None] * self.depth
        delta = output_grad * self._activation(self.depth - 1).derivative(
            trace.pre_activations[-1], trace.activations[-1]
        )
        for k in reversed(range(self.depth)):
            w = self.weights[k]
            weight_grads[k] = delta @ trace.activations[k].T + l1 * np.sign(w) + 2 * l2 * w
            bias_grads[k] = delta.sum(axis=1)
            if k > 0:
                delta = (w.T @ delta) * self._activation(k - 1).derivative(
                    trace.pre_activations[k - 1], trace.activations[k]
                )

        return NetworkGradients(weights=weight_grads, biases=bias_grads)

    def penalty(self, l1: float = 0.0, l2: float = 0.0) -> float:
        """Value of the weight penalty whose gradient backward adds"""

        return float(sum(l1 * np.sum(np.abs(w)) + l2 * np.sum(w ** 2) for w in self.weights))

    def parameters(self) -> List[np.ndarray]:
        """Flat list (W_1, b_1, W_2, b_2, ...)"""

        return [p for pair in zip(self.weights, self.biases) for p in pair]

    def with_parameters(self, parameters: List[np.ndarray]) -> 'MlpNetwork':
        """New network with the same architecture and the given flat parameters"""

        if len(parameters) != 2 * self.depth:
            raise ShapeError(f'Expected {2 * self.depth} parameter arrays, got {len(parameters)}')

        return MlpNetwork(
            layer_widths=list(self.layer_widths),
            weights=[np.asarray(p, dtype=np.float64) for p in parameters[0::2]],
            biases=[np.asarray(p, dtype=np.float64) for p in parameters[1::2]],
            activation=self.activation
        )
