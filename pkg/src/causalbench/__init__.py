"""Self-hostable benchmarking platform for causal ML components.

Subpackages:

* ``core``     -- immutable data model and pure context algebra
* ``registry`` -- versioned, content-addressed component/run store
* ``compat``   -- signature/task compatibility and suggestion logic
* ``harness``  -- local plugin execution with time/resource measurement
* ``analysis`` -- run tables, causal impact, Pareto ranking, prediction,
  recommendation, and report rendering
* ``server``   -- HTTP/JSON API over the registry
* ``cli``      -- the ``cb`` console client
"""

__version__ = "0.1.0"
