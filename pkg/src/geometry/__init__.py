"""
Central charge geometry: phases, g_t, HN polygons
"""
