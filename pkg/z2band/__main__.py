from z2band.src.cli import main

raise SystemExit(main())
