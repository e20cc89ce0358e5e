"""Geometry of hyperbolic 4-space in the upper half-space model.

This package contains:
    - objects: points, oriented lines, flags, crosses and frames
    - metric: distance, geodesics and the action of Vahlen matrices
    - crosses: normalizing isometries and the cross/frame correspondence
    - perpendicular: common perpendiculars and augmentation of line triples
    - half_distance: quaternion, e1- and e2-complex half distances

Example:
    from hexagauss.hypgeo.objects import STANDARD_CROSS
    from hexagauss.hypgeo.crosses import cross_to_frame

    frame = cross_to_frame(STANDARD_CROSS)
    print(frame.vectors)
"""
