from ffspectra.cli import main

raise SystemExit(main())
