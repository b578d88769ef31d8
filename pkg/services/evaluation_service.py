from dataclasses import dataclass
from typing import Optional

import numpy as np

from objects.eval_report import EvalReport
from utils.errors import ShapeError


@dataclass(frozen=True)
class LinearProbe:
    """One-vs-rest linear classifier. weights is (d + 1) x C, the last row being the bias"""

    weights: np.ndarray
    classes: np.ndarray
    ridge: float

    def predict(self, points: np.ndarray) -> np.ndarray:
        """Labels of the columns of points (d x M)"""

        if points.shape[0] != self.weights.shape[0] - 1:
            raise ShapeError(f'Probe expects {self.weights.shape[0] - 1} features, got {points.shape[0]}')

        scores = EvaluationService.augment(points) @ self.weights

        return self.classes[np.argmax(scores, axis=1)]


class EvaluationService:
    """Class that contains the downstream evaluation of representations: KNN, linear probe and confusion counts"""

    @classmethod
    def knn_classify(cls, train_points: np.ndarray, train_labels: np.ndarray, query_points: np.ndarray, k: int):
        """
        Euclidean K-nearest-neighbor majority vote. Samples are columns.
        Distance ties go to the lower training index and vote ties to the lowest label
        """

        train_points = np.asarray(train_points, dtype=np.float64)
        query_points = np.asarray(query_points, dtype=np.float64)
        train_labels = np.asarray(train_labels).astype(np.int64)

        if train_points.ndim != 2 or train_points.shape[1] == 0:
            raise ValueError('The KNN training set is empty')

        if query_points.ndim != 2 or query_points.shape[0] != train_points.shape[0]:
            raise ShapeError(f'Query dimension {query_points.shape} does not match {train_points.shape[0]}')

        if train_labels.shape != (train_points.shape[1],):
            raise ShapeError('Training labels do not match the training points')

        if not 1 <= k <= train_points.shape[1]:
            raise ValueError(f'k must be in [1, {train_points.shape[1]}], got {k}')

        n_classes = int(train_labels.max()) + 1
        predictions = np.empty(query_points.shape[1], dtype=np.int64)
        for ix in range(query_points.shape[1]):
            distances = np.sum((train_points - query_points[:, ix:ix + 1]) ** 2, axis=0)
            neighbors = np.argsort(distances, kind='stable')[:k]
            votes = np.bincount(train_labels[neighbors], minlength=n_classes)
            predictions[ix] = int(np.argmax(votes))

        return predictions

    @classmethod
    def knn_report(cls, train_points, train_labels, query_points, query_labels, k: int) -> EvalReport:
        """KNN accuracy and confusion counts on labeled queries"""

        predictions = cls.knn_classify(train_points, train_labels, query_points, k)

        return cls._report(query_labels, predictions, metric='knn', k=k)

    @classmethod
    def linear_probe(cls, train_points: np.ndarray, train_labels: np.ndarray, ridge: float) -> LinearProbe:
        """Closed-form one-vs-rest ridge regression to +-1 targets. The bias is not penalized"""

        if ridge <= 0:
            raise ValueError(f'Ridge must be positive, got {ridge}')

        train_points = np.asarray(train_points, dtype=np.float64)
        train_labels = np.asarray(train_labels).astype(np.int64)
        if train_labels.shape != (train_points.shape[1],):
            raise ShapeError('Training labels do not match the training points')

        classes = np.unique(train_labels)
        if classes.size < 2:
            raise ValueError(f'The linear probe needs at least 2 classes, got {classes.tolist()}')

        x = cls.augment(train_points)
        targets = np.where(train_labels[:, None] == classes[None, :], 1.0, -1.0)
        penalty = ridge * np.eye(x.shape[1])
        penalty[-1, -1] = 0.0

        weights = np.linalg.solve(x.T @ x + penalty, x.T @ targets)

        return LinearProbe(weights=weights, classes=classes, ridge=ridge)

    @classmethod
    def score(cls, probe: LinearProbe, points: np.ndarray, labels: np.ndarray) -> EvalReport:
        """Accuracy and confusion counts of a linear probe"""

        return cls._report(labels, probe.predict(np.asarray(points, dtype=np.float64)), metric='probe', ridge=probe.ridge)

    @classmethod
    def confusion_matrix(
            cls,
            true_labels: np.ndarray,
            predicted: np.ndarray,
            n_classes: Optional[int] = None
    ) -> np.ndarray:
        """counts[i, j] = number of samples of true class i predicted as j"""

        true_labels = np.asarray(true_labels).astype(np.int64)
        predicted = np.asarray(predicted).astype(np.int64)
        if true_labels.shape != predicted.shape:
            raise ShapeError(f'Label lengths differ: {true_labels.shape} vs {predicted.shape}')

        if n_classes is None:
            n_classes = int(max(true_labels.max(initial=-1), predicted.max(initial=-1))) + 1

        for labels in (true_labels, predicted):
            if labels.size and (labels.min() < 0 or labels.max() >= n_classes):
                raise ValueError(f'Labels must be in [0, {n_classes})')

        counts = np.zeros((n_classes, n_classes), dtype=np.int64)
        np.add.at(counts, (true_labels, predicted), 1)

        return counts

    @staticmethod
    def augment(points: np.ndarray) -> np.ndarray:
        """Samples as rows with a trailing column of ones"""

        return np.hstack([points.T, np.ones((points.shape[1], 1))])

    @classmethod
    def _report(cls, true_labels, predicted, metric: str, k: int = None, ridge: float = None) -> EvalReport:
        """Builds an EvalReport from labels and predictions"""

        confusion = cls.confusion_matrix(true_labels, predicted)
        n_eval = int(confusion.sum())

        return EvalReport(
            accuracy=float(np.trace(confusion) / n_eval) if n_eval else 0.0,
            confusion=confusion,
            n_eval=n_eval,
            metric=metric,
            k=k,
            ridge=ridge
        )
