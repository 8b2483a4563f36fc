from feynman_silt.cli import main

raise SystemExit(main())
