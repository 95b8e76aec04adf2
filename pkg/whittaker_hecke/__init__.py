"""
whittaker_hecke: Whittaker 范畴与分次仿射 Hecke 代数之间的有限秩精确核对

子模块:
    exactlin   有理数精确线性代数
    weyl       S_m、Bruhat 序、双陪集与 KL 多项式
    weights    权重、点作用与 V^⊗ℓ 的权重重数
    multiseg   多重线段
    orbitmaps  分次幂零轨道与双陪集之间的 Φ、Ψ
    hecke      分次仿射 Hecke 代数及其模
    verma      Verma 模与张量积权块
    asfunctor  张量积上的 Θ 作用与函子值
    multtable  两侧重数矩阵与核对报告
    cli        命令行
"""

__version__ = "0.1.0"
