"""Toolkit for scoring the importance of 5-second segments of educational videos.

Pipeline: annotate videos segment by segment, extract per-frame visual/audio/text
features, train a BiLSTM fusion classifier over a history window, and evaluate
with Top-k accuracy and frame/segment MAE.
"""

__version__ = "0.1.0"
