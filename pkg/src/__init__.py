# 四元分圆序列工具