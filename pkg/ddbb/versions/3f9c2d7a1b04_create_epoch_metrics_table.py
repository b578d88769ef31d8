"""create epoch metrics table

Revision ID: 3f9c2d7a1b04
Revises:
Create Date: 2026-10-19 10:12:41.502133

"""
import sqlalchemy as sa
from alembic import op
# revision identifiers, used by Alembic.
from sqlalchemy import func

revision = '3f9c2d7a1b04'
down_revision = None
branch_labels = None
depends_on = None


def upgrade():
    op.create_table(
        'epoch_metrics',
        sa.Column('created_at', sa.DateTime(), server_default=func.now(), nullable=True),
        sa.Column('run_id', sa.String(), nullable=False),
        sa.Column('train_settings', sa.JSON(), nullable=True),
        sa.Column('epoch', sa.Integer(), nullable=False),
        sa.Column('train_err', sa.Float(), nullable=True),
        sa.Column('tune_err', sa.Float(), nullable=True),
        sa.Column('seconds', sa.Float(), nullable=True),
    )
    op.create_index('ix_epoch_metrics_run_id', 'epoch_metrics', ['run_id'], unique=False)


def downgrade():
    op.drop_index('ix_epoch_metrics_run_id', table_name='epoch_metrics')
    op.drop_table('epoch_metrics')
