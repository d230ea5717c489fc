"""
Synergy SO(3)

SO(3) 上のシナジーポテンシャル族と、それを用いた剛体の姿勢追従ハイブリッド制御
"""

__version__ = "0.1.0"
