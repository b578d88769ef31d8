final_epoch_metrics_query = """
    SELECT
        m.run_id,
        m.epoch,
        m.train_err,
        m.tune_err
    FROM epoch_metrics m
    JOIN (
        SELECT run_id, MAX(epoch) AS epoch
        FROM epoch_metrics
        GROUP BY run_id
    ) last ON last.run_id = m.run_id AND last.epoch = m.epoch
    ORDER BY m.run_id
"""
